#pragma once

#include "s3tb/quaternion.hpp"

#include <functional>
#include <random>
#include <string>
#include <tuple>

namespace s3tb {

/// A point (g1, p1, g2, p2) of T*(S^3 x S^3) embedded in H^4.
struct PhaseState {
    Quaternion g1{1, 0, 0, 0};
    Quaternion p1{};
    Quaternion g2{1, 0, 0, 0};
    Quaternion p2{};

    /// |g_i| = 1 and <p_i, g_i> = 0 within kUnitTolerance.
    [[nodiscard]] bool is_valid(double tol = kUnitTolerance) const;
    /// Throws std::invalid_argument when is_valid() fails.
    void validate() const;
    /// cos(theta) = <g1, g2>.
    [[nodiscard]] double separation_cosine() const { return inner_product(g1, g2); }
};

struct MassParams {
    double m1{1.0};
    double m2{1.0};

    MassParams() = default;
    /// Throws std::invalid_argument unless both masses are finite and positive.
    MassParams(double m1_, double m2_);
    /// Both masses equal to 1/alpha (the Lagrange-top identification).
    static MassParams lagrange(double alpha);
    [[nodiscard]] bool equal() const { return m1 == m2; }
};

enum class PotentialKind { gravitational, linear, custom };

/// Interaction potential as a function of r = cos(theta) = <g1, g2>.
///
/// The gravitational form V = -m1 m2 cot(theta) carries the mass product, so its
/// evaluators take the masses; the linear form V = gamma r does not depend on them.
/// Force is f = -dV/dr.
class Potential {
public:
    using Fn = std::function<double(double)>;

    static Potential gravitational();
    static Potential linear(double gamma);
    /// Custom law; `dforce` may be empty, in which case a central difference is used.
    static Potential custom(Fn value, Fn force, Fn dforce = {});

    /// Parses "grav", "gravitational" or "linear:<gamma>".
    static Potential parse(const std::string& spec);
    [[nodiscard]] std::string describe() const;

    [[nodiscard]] PotentialKind kind() const { return kind_; }
    [[nodiscard]] double gamma() const { return gamma_; }

    [[nodiscard]] double value(double r, const MassParams& m) const;
    [[nodiscard]] double force(double r, const MassParams& m) const;
    /// df/dr.
    [[nodiscard]] double dforce(double r, const MassParams& m) const;

    /// Throws SingularityError for the gravitational law when 1 - |r| <= 1e-9.
    void check_regular(double r) const;

private:
    PotentialKind kind_{PotentialKind::linear};
    double gamma_{0.0};
    Fn value_;
    Fn force_;
    Fn dforce_;
};

inline constexpr double kCollisionGuard = 1e-9;

/// |p1|^2 / 2m1 + |p2|^2 / 2m2 + V(<g1, g2>).
[[nodiscard]] double hamiltonian_2body(const PhaseState& s, const MassParams& m, const Potential& pot);

/// 4-D Lagrange top pulled back to S^3 x S^3: requires 0 < alpha <= 2.
[[nodiscard]] double hamiltonian_lagrange(const PhaseState& s, double alpha, double gamma);

/// lambda = p1 g1^{-1} + p2 g2^{-1}.
[[nodiscard]] ImaginaryQuaternion momentum_left(const PhaseState& s);
/// rho = g1^{-1} p1 + g2^{-1} p2.
[[nodiscard]] ImaginaryQuaternion momentum_right(const PhaseState& s);

enum class PointClass { generic, cospherical, cocircular };

[[nodiscard]] const char* to_string(PointClass c);

/// Rank test on the 4x4 matrix with columns (g1, p1, g2, p2): singular values below
/// 1e-9 relative to the largest count as zero.
[[nodiscard]] PointClass classify_point(const PhaseState& s);

/// (|lambda|^2 - |rho|^2, 2<L1, L2> - 2<R1, R2>); both sides of the same identity.
[[nodiscard]] std::pair<double, double> verify_cospherical_identity(const PhaseState& s);

struct SliceCheck {
    ImaginaryQuaternion omega;
    ImaginaryQuaternion lambda;
    ImaginaryQuaternion rho;
};

/// For a state with every component purely imaginary (two particles on the unit S^2 in Im H):
/// Omega = g1 x p1 + g2 x p2 together with the two momenta.
[[nodiscard]] SliceCheck sjamaar_slice_check(const PhaseState& s);

/// Left action (l, r) . q = l q r^{-1} applied to every component.
[[nodiscard]] PhaseState act(const Quaternion& l, const Quaternion& r, const PhaseState& s);

// Random state generation for tests, the CLI and grid sweeps.
using Rng = std::mt19937_64;

[[nodiscard]] Quaternion random_unit_quaternion(Rng& rng);
/// Gaussian tangent vector at unit g with expected norm of order `scale`.
[[nodiscard]] Quaternion random_tangent(Rng& rng, const Quaternion& g, double scale);
/// Generic state. With min_sin_theta > 0, redraws until sin(theta) >= min_sin_theta.
[[nodiscard]] PhaseState random_phase_state(Rng& rng, double momentum_scale = 1.0, double min_sin_theta = 0.0);
/// All four vectors in a random 3-dimensional subspace.
[[nodiscard]] PhaseState random_cospherical_state(Rng& rng, double momentum_scale = 1.0, double min_sin_theta = 0.0);
/// All four vectors purely imaginary (unit S^2 in Im H).
[[nodiscard]] PhaseState random_imaginary_state(Rng& rng, double momentum_scale = 1.0, double min_sin_theta = 0.0);
/// All four vectors in a random 2-plane.
[[nodiscard]] PhaseState random_cocircular_state(Rng& rng, double momentum_scale = 1.0, double min_sin_theta = 0.0);

}  // namespace s3tb
