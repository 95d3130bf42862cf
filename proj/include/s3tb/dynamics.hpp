#pragma once

#include "s3tb/integrator.hpp"
#include "s3tb/reduction.hpp"

#include <iosfwd>
#include <string>

namespace s3tb {

enum class HamiltonianTag { two_body, lagrange, lagrange_altered };

[[nodiscard]] const char* to_string(HamiltonianTag t);

/// Which reduced Hamiltonian to evaluate or flow.
struct HamiltonianKind {
    HamiltonianTag tag{HamiltonianTag::two_body};
    MassParams masses{};
    Potential potential{Potential::gravitational()};
    double alpha{1.0};
    double gamma{0.0};

    static HamiltonianKind two_body(const MassParams& m, const Potential& pot);
    /// Requires 0 < alpha <= 2.
    static HamiltonianKind lagrange(double alpha, double gamma);
    static HamiltonianKind lagrange_altered(double alpha, double gamma);

    /// Equal masses 1/alpha for the Lagrange kinds.
    [[nodiscard]] MassParams effective_masses() const;
    /// Linear potential gamma r for the Lagrange kinds.
    [[nodiscard]] Potential effective_potential() const;
};

// Flat layouts used by the integrator.
using ReducedVec = StateVec<10>;  // A1 (3), A2 (3), gD (4)
using InvariantVec = StateVec<8>;  // InvariantPoint::to_array order
using FullVec = StateVec<16>;      // g1, p1, g2, p2 as (w, x, y, z)

[[nodiscard]] ReducedVec pack(const ReducedState& rs);
[[nodiscard]] ReducedState unpack_reduced(const ReducedVec& v, Side side);
[[nodiscard]] FullVec pack(const PhaseState& s);
[[nodiscard]] PhaseState unpack_full(const FullVec& v);

struct ReducedTangent {
    ImaginaryQuaternion dA1;
    ImaginaryQuaternion dA2;
    Quaternion dgD;
};

/// Hamilton's equations on the left reduced space.
[[nodiscard]] ReducedTangent rhs_left(const ReducedState& rs, const MassParams& m, const Potential& pot);
/// Hamilton's equations on the right reduced space.
[[nodiscard]] ReducedTangent rhs_right(const ReducedState& rs, const MassParams& m, const Potential& pot);
/// Dispatches on rs.side.
[[nodiscard]] ReducedTangent rhs_reduced(const ReducedState& rs, const MassParams& m, const Potential& pot);

/// Two-body equations on the invariant variety, in to_array() order.
[[nodiscard]] InvariantVec rhs_full_reduced(const InvariantPoint& pt, const MassParams& m, const Potential& pot);

/// g1 R1 / m1.
[[nodiscard]] Quaternion reconstruct_rhs(const Quaternion& g1, const ImaginaryQuaternion& R1, double m1);

/// Unreduced flow: the left-reduced flow lifted through the reconstruction equation.
[[nodiscard]] FullVec rhs_full_space(const PhaseState& s, const MassParams& m, const Potential& pot);

[[nodiscard]] double evaluate_reduced_hamiltonian(const HamiltonianKind& kind, const ReducedState& rs);
[[nodiscard]] double evaluate_reduced_hamiltonian(const HamiltonianKind& kind, const InvariantPoint& pt);

/// Normalise g_i and remove the normal component of p_i.
void project_full(FullVec& v);
/// Normalise gD.
void project_reduced(ReducedVec& v);

[[nodiscard]] Trajectory<10> integrate_reduced(const ReducedState& rs0, const MassParams& m, const Potential& pot,
                                               double T, const FlowConfig& cfg = {});
[[nodiscard]] Trajectory<16> integrate_full(const PhaseState& s0, const MassParams& m, const Potential& pot, double T,
                                            const FlowConfig& cfg = {});
/// Two-body flow on the invariants.
[[nodiscard]] Trajectory<8> integrate_invariant(const InvariantPoint& p0, const MassParams& m, const Potential& pot,
                                                double T, const FlowConfig& cfg = {});
/// Flow of any reduced Hamiltonian on the invariants through the structure matrix.
[[nodiscard]] Trajectory<8> integrate_invariant(const InvariantPoint& p0, const HamiltonianKind& kind, double T,
                                                const FlowConfig& cfg = {});

/// Conserved quantities of a sample.
struct InvariantSnapshot {
    double H{0};
    double C1{0};
    double C2{0};
    double C3{0};
    double syzygy{0};
    /// k11 k22 k33, which bounds every term of det(k); drift of the syzygy is measured against it.
    double syzygy_scale{0};
};

[[nodiscard]] InvariantSnapshot snapshot(const PhaseState& s, const MassParams& m, const Potential& pot);
[[nodiscard]] InvariantSnapshot snapshot(const ReducedState& rs, const MassParams& m, const Potential& pot);
[[nodiscard]] InvariantSnapshot snapshot(const InvariantPoint& pt, const HamiltonianKind& kind);

/// max_t |Q(t) - Q(0)| / max(1, |Q(0)|) for each conserved quantity.
struct DriftReport {
    double H{0};
    double C1{0};
    double C2{0};
    double C3{0};
    double syzygy{0};

    [[nodiscard]] double max() const;
    void accumulate(const InvariantSnapshot& first, const InvariantSnapshot& now);
};

[[nodiscard]] DriftReport drift(const Trajectory<16>& tr, const MassParams& m, const Potential& pot);
[[nodiscard]] DriftReport drift(const Trajectory<10>& tr, Side side, const MassParams& m, const Potential& pot);
[[nodiscard]] DriftReport drift(const Trajectory<8>& tr, const HamiltonianKind& kind);

/// t, g1w..p2z, H, C1, C2, C3 (C1 = |g_L|^2, C2 = |lambda|^2, C3 = |rho|^2).
void write_trajectory_csv(std::ostream& os, const Trajectory<16>& tr, const MassParams& m, const Potential& pot);
/// t, k11..delta, H, C1, C2, C3.
void write_trajectory_csv(std::ostream& os, const Trajectory<8>& tr, const HamiltonianKind& kind);

}  // namespace s3tb
