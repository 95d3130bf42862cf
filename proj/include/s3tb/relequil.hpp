#pragma once

#include "s3tb/dynamics.hpp"
#include "s3tb/errors.hpp"

#include <optional>
#include <vector>

namespace s3tb {

enum class REKind { singular0, singularPi, acute, right_angled, obtuse };

[[nodiscard]] const char* to_string(REKind k);

/// One root of the lever equation m1 sin 2phi1 = m2 sin 2(theta - phi1), taken mod pi.
struct LeverBranch {
    double phi1{0};
    double zeta{0};
    /// zeta has the sign of the force, so |xi| = y / zeta is non-negative.
    bool admissible{false};
};

/// Relative equilibrium in the gauge g_L = e^{i theta}, generator (|xi| j, |eta| j).
struct RelativeEquilibrium {
    REKind kind{REKind::acute};
    bool isosceles{false};
    double theta{0};
    double phi1{0};
    double phi2{0};
    double xi_mag{0};
    double eta_mag{0};
    double x1{0};
    double x2{0};
    double y{0};
    double zeta{0};
    /// Force at r = cos theta.
    double f{0};
    /// Singular kinds: R_i = c m_i j with c = |xi| - |eta|.
    double c{0};
    std::vector<LeverBranch> branches;
    MassParams masses{};
    Potential potential{Potential::gravitational()};
    PhaseState state{};

    [[nodiscard]] bool singular() const { return kind == REKind::singular0 || kind == REKind::singularPi; }
};

/// Result of the reduced-space classification at (theta, |eta|).
struct RESolution {
    REKind kind{REKind::acute};
    double theta{0};
    double eta_mag{0};
    /// f sin(theta) / (2 |eta|); zero for the singular kinds.
    double y{0};
    /// Right-angled kind: the constraint x1 + x2 = line_sum.
    double line_sum{0};
    /// Filled for the acute and obtuse kinds.
    std::optional<RelativeEquilibrium> unique;
};

/// Angles within this distance of 0, pi/2 or pi select the singular or right-angled kinds.
inline constexpr double kAngleTolerance = 1e-12;

/// Throws NoSolutionError for theta = pi/2 with unequal masses and std::invalid_argument
/// when the force vanishes or |eta| <= 0.
[[nodiscard]] RESolution solve_re(double theta, double eta_mag, const MassParams& m, const Potential& pot);

/// Both lever roots at theta (theta not a multiple of pi/2) for a force of sign `force_sign`.
[[nodiscard]] std::vector<LeverBranch> lever_branches(double theta, const MassParams& m, double force_sign);

/// Acute or obtuse RE; same checks as solve_re.
[[nodiscard]] RelativeEquilibrium make_re(double theta, double eta_mag, const MassParams& m, const Potential& pot);
/// Right-angled RE with free angle phi1 (equal masses). phi1 must lie in (0, pi/2) for an
/// attractive force and in (-pi/2, 0) for a repulsive one.
[[nodiscard]] RelativeEquilibrium make_right_angled(double phi1, double eta_mag, const MassParams& m,
                                                    const Potential& pot);
/// Both particles on one great circle, coincident (antipodal = false) or antipodal.
[[nodiscard]] RelativeEquilibrium make_singular(bool antipodal, double xi_mag, double eta_mag, const MassParams& m,
                                                const Potential& pot);

/// g1 = e^{-i phi1}, g2 = e^{i phi2}, p_i = m_i (xi g_i - g_i eta).
[[nodiscard]] PhaseState reconstruct_re(const RelativeEquilibrium& re);

/// Sup norm of the invariant-space vector field at the RE.
[[nodiscard]] double verify_re_fixed_point(const RelativeEquilibrium& re);

/// 2 |xi| |eta| zeta - f sin(theta).
[[nodiscard]] double lever_residual(const RelativeEquilibrium& re);

/// RE at (theta, tau) with 2 e^tau |eta|^2 = f sin(theta) / zeta and |xi| = e^tau |eta|.
/// At theta = pi/2 the isosceles right-angled RE is returned.
[[nodiscard]] RelativeEquilibrium re_from_tau(double theta, double tau, const MassParams& m, const Potential& pot);
/// Right-angled RE at (phi1, tau).
[[nodiscard]] RelativeEquilibrium right_angled_from_tau(double phi1, double tau, const MassParams& m,
                                                        const Potential& pot);

struct MomentumSquares {
    double lam2{0};
    double rho2{0};
};

/// (|lambda|^2, |rho|^2) of the RE at (theta, tau), evaluated on the reconstructed state.
[[nodiscard]] MomentumSquares momenta_at(double theta, double tau, const MassParams& m, const Potential& pot);

}  // namespace s3tb
