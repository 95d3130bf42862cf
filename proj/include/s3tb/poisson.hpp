#pragma once

#include "s3tb/dynamics.hpp"

#include <functional>

namespace s3tb {

/// Partial gradients of a function on g1* x g2* x H*.
struct GradientTriple {
    ImaginaryQuaternion d1;
    ImaginaryQuaternion d2;
    Quaternion d3;
};

using GradientField = std::function<GradientTriple(const ReducedState&)>;

/// Lie-Poisson bracket {f, g} at rs, with the sign + on the left side and - on the right.
[[nodiscard]] double lie_poisson_bracket(const GradientTriple& f, const GradientTriple& g, const ReducedState& at);
[[nodiscard]] double lie_poisson_bracket(const GradientField& f, const GradientField& g, const ReducedState& at);

/// Gradient of one invariant generator (index in InvariantPoint::to_array order) on g1* x g2* x H*.
[[nodiscard]] GradientTriple generator_gradient(std::size_t index, const ReducedState& at);
/// Gradients of the reduced Hamiltonians and of C1, C2.
[[nodiscard]] GradientTriple hamiltonian_gradient(const ReducedState& at, const MassParams& m, const Potential& pot);
[[nodiscard]] GradientTriple casimir_C1_gradient(const ReducedState& at);
[[nodiscard]] GradientTriple casimir_C2_gradient(const ReducedState& at);

/// Structure-matrix entry {x_a, x_b} for generators in InvariantPoint::to_array order.
[[nodiscard]] double table_bracket(std::size_t a, std::size_t b, const InvariantPoint& at);
[[nodiscard]] Eigen::Matrix<double, 8, 8> structure_matrix(const InvariantPoint& at);

using InvariantGradient = std::array<double, 8>;

/// dx_a/dt = sum_b dH/dx_b {x_b, x_a}. Throws std::domain_error off the variety (tolerance `tol`).
[[nodiscard]] InvariantVec table_flow(const InvariantGradient& grad, const InvariantPoint& at, double tol = 1e-8);
/// Same without the on-variety check (used inside integrators, where drift is expected).
[[nodiscard]] InvariantVec table_flow_unchecked(const InvariantGradient& grad, const InvariantPoint& at);

[[nodiscard]] InvariantGradient hamiltonian_gradient(const HamiltonianKind& kind, const InvariantPoint& at);
[[nodiscard]] InvariantGradient casimir_gradient(int which, const InvariantPoint& at);
[[nodiscard]] InvariantGradient integral_I_gradient(const InvariantPoint& at, double alpha, double gamma);

/// Bracket {F, G} of two functions on the invariants given their gradients.
[[nodiscard]] double invariant_bracket(const InvariantGradient& F, const InvariantGradient& G, const InvariantPoint& at);

/// alpha (k12^2 - k11 k22) - 2 gamma delta.
[[nodiscard]] double integral_I(const InvariantPoint& pt, double alpha, double gamma);

}  // namespace s3tb
