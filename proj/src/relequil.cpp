#include "s3tb/relequil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace s3tb {

namespace {

constexpr double kPi = std::numbers::pi;

bool near(double a, double b) { return std::abs(a - b) <= kAngleTolerance; }

void check_eta(double eta_mag) {
    if (!(eta_mag > 0.0) || !std::isfinite(eta_mag)) {
        throw std::invalid_argument("relative equilibrium: |eta| must be positive and finite");
    }
}

double force_at(double theta, const MassParams& m, const Potential& pot) {
    const double f = pot.force(std::cos(theta), m);
    if (f == 0.0 || !std::isfinite(f)) {
        throw std::invalid_argument("relative equilibrium: the force must be finite and nonzero");
    }
    return f;
}

ImaginaryQuaternion unit_j(double s) { return {0.0, s, 0.0}; }

bool equal_masses(const MassParams& m) { return std::abs(m.m1 - m.m2) <= 1e-14 * std::max(m.m1, m.m2); }

}  // namespace

const char* to_string(REKind k) {
    switch (k) {
        case REKind::singular0: return "singular0";
        case REKind::singularPi: return "singularPi";
        case REKind::acute: return "acute";
        case REKind::right_angled: return "rightAngled";
        case REKind::obtuse: return "obtuse";
    }
    return "unknown";
}

std::vector<LeverBranch> lever_branches(double theta, const MassParams& m, double force_sign) {
    const double a = 0.5 * std::atan2(m.m2 * std::sin(2.0 * theta), m.m1 + m.m2 * std::cos(2.0 * theta));
    std::vector<LeverBranch> out;
    for (double phi1 : {a, a + 0.5 * kPi}) {
        while (theta - phi1 > kPi) phi1 += kPi;
        while (theta - phi1 < 0.0) phi1 -= kPi;
        const double zeta = m.m1 * std::sin(2.0 * phi1);
        out.push_back({phi1, zeta, zeta != 0.0 && (zeta > 0.0) == (force_sign > 0.0)});
    }
    return out;
}

PhaseState reconstruct_re(const RelativeEquilibrium& re) {
    PhaseState s;
    const Quaternion xi{unit_j(re.xi_mag)};
    const Quaternion eta{unit_j(re.eta_mag)};
    switch (re.kind) {
        case REKind::singular0:
            s.g1 = Quaternion{1.0};
            s.g2 = Quaternion{1.0};
            break;
        case REKind::singularPi:
            s.g1 = Quaternion{1.0};
            s.g2 = Quaternion{-1.0};
            break;
        default:
            s.g1 = Quaternion::exp_i(-re.phi1);
            s.g2 = Quaternion::exp_i(re.phi2);
            break;
    }
    s.p1 = re.masses.m1 * (xi * s.g1 - s.g1 * eta);
    s.p2 = re.masses.m2 * (xi * s.g2 - s.g2 * eta);
    return s;
}

RelativeEquilibrium make_re(double theta, double eta_mag, const MassParams& m, const Potential& pot) {
    check_eta(eta_mag);
    if (!(theta > 0.0) || !(theta < kPi) || near(theta, 0.5 * kPi)) {
        throw std::invalid_argument("make_re: theta must lie in (0, pi) away from pi/2");
    }
    RelativeEquilibrium re;
    re.masses = m;
    re.potential = pot;
    re.theta = theta;
    re.eta_mag = eta_mag;
    re.kind = theta < 0.5 * kPi ? REKind::acute : REKind::obtuse;
    re.f = force_at(theta, m, pot);
    const double s = std::sin(theta);
    re.y = re.f * s / (2.0 * eta_mag);
    const double cot2 = std::cos(2.0 * theta) / std::sin(2.0 * theta);
    const double csc2 = 1.0 / std::sin(2.0 * theta);
    re.x1 = re.y * (cot2 + (m.m1 / m.m2) * csc2) - m.m1 * eta_mag;
    re.x2 = re.y * (cot2 + (m.m2 / m.m1) * csc2) - m.m2 * eta_mag;

    re.branches = lever_branches(theta, m, re.f);
    const auto it = std::find_if(re.branches.begin(), re.branches.end(), [](const LeverBranch& b) { return b.admissible; });
    if (it == re.branches.end()) throw NoSolutionError("make_re: no admissible lever branch");
    re.phi1 = it->phi1;
    re.phi2 = theta - re.phi1;
    re.zeta = it->zeta;
    re.xi_mag = re.y / re.zeta;
    re.isosceles = equal_masses(m) && std::abs(std::sin(re.phi1 - re.phi2)) < 1e-12;
    re.state = reconstruct_re(re);
    return re;
}

RelativeEquilibrium make_right_angled(double phi1, double eta_mag, const MassParams& m, const Potential& pot) {
    check_eta(eta_mag);
    if (!equal_masses(m)) {
        throw NoSolutionError("right-angled relative equilibria require equal masses");
    }
    RelativeEquilibrium re;
    re.masses = m;
    re.potential = pot;
    re.kind = REKind::right_angled;
    re.theta = 0.5 * kPi;
    re.eta_mag = eta_mag;
    re.f = force_at(re.theta, m, pot);
    const bool ok = re.f > 0.0 ? (phi1 > 0.0 && phi1 < 0.5 * kPi) : (phi1 < 0.0 && phi1 > -0.5 * kPi);
    if (!ok) {
        throw std::invalid_argument(re.f > 0.0 ? "make_right_angled: phi1 must lie in (0, pi/2)"
                                               : "make_right_angled: phi1 must lie in (-pi/2, 0)");
    }
    re.phi1 = phi1;
    re.phi2 = re.theta - phi1;
    re.y = re.f / (2.0 * eta_mag);
    re.zeta = m.m1 * std::sin(2.0 * phi1);
    re.xi_mag = re.y / re.zeta;
    re.x1 = m.m1 * (re.xi_mag * std::cos(2.0 * re.phi1) - eta_mag);
    re.x2 = m.m2 * (re.xi_mag * std::cos(2.0 * re.phi2) - eta_mag);
    re.branches = {{phi1, re.zeta, true}};
    re.isosceles = std::abs(std::sin(re.phi1 - re.phi2)) < 1e-12;
    re.state = reconstruct_re(re);
    return re;
}

RelativeEquilibrium make_singular(bool antipodal, double xi_mag, double eta_mag, const MassParams& m,
                                  const Potential& pot) {
    if (!(xi_mag >= 0.0) || !(eta_mag >= 0.0) || !std::isfinite(xi_mag) || !std::isfinite(eta_mag)) {
        throw std::invalid_argument("make_singular: |xi| and |eta| must be non-negative and finite");
    }
    pot.check_regular(antipodal ? -1.0 : 1.0);
    RelativeEquilibrium re;
    re.masses = m;
    re.potential = pot;
    re.kind = antipodal ? REKind::singularPi : REKind::singular0;
    re.theta = antipodal ? kPi : 0.0;
    re.xi_mag = xi_mag;
    re.eta_mag = eta_mag;
    re.c = xi_mag - eta_mag;
    re.x1 = re.c * m.m1;
    re.x2 = re.c * m.m2;
    re.f = pot.force(antipodal ? -1.0 : 1.0, m);
    re.state = reconstruct_re(re);
    return re;
}

RESolution solve_re(double theta, double eta_mag, const MassParams& m, const Potential& pot) {
    if (!(theta >= 0.0) || !(theta <= kPi)) throw std::invalid_argument("solve_re: theta must lie in [0, pi]");
    check_eta(eta_mag);
    RESolution out;
    out.theta = theta;
    out.eta_mag = eta_mag;
    if (near(theta, 0.0) || near(theta, kPi)) {
        out.kind = near(theta, 0.0) ? REKind::singular0 : REKind::singularPi;
        pot.check_regular(std::cos(theta));
        force_at(theta, m, pot);
        return out;
    }
    const double f = force_at(theta, m, pot);
    out.y = f * std::sin(theta) / (2.0 * eta_mag);
    if (near(theta, 0.5 * kPi)) {
        if (!equal_masses(m)) {
            throw NoSolutionError("no relative equilibrium at theta = pi/2 for unequal masses");
        }
        out.kind = REKind::right_angled;
        out.line_sum = -2.0 * m.m1 * eta_mag;
        return out;
    }
    out.unique = make_re(theta, eta_mag, m, pot);
    out.kind = out.unique->kind;
    return out;
}

double verify_re_fixed_point(const RelativeEquilibrium& re) {
    const InvariantVec d = rhs_full_reduced(invariants_of(re.state), re.masses, re.potential);
    double mx = 0.0;
    for (double v : d) mx = std::max(mx, std::abs(v));
    return mx;
}

double lever_residual(const RelativeEquilibrium& re) {
    return 2.0 * re.xi_mag * re.eta_mag * re.zeta - re.f * std::sin(re.theta);
}

RelativeEquilibrium right_angled_from_tau(double phi1, double tau, const MassParams& m, const Potential& pot) {
    const double f = force_at(0.5 * kPi, m, pot);
    const double zeta = m.m1 * std::sin(2.0 * phi1);
    const double q = f / (2.0 * zeta * std::exp(tau));
    if (!(q > 0.0)) {
        throw std::invalid_argument("right_angled_from_tau: phi1 is on the wrong side for this force");
    }
    return make_right_angled(phi1, std::sqrt(q), m, pot);
}

RelativeEquilibrium re_from_tau(double theta, double tau, const MassParams& m, const Potential& pot) {
    if (!std::isfinite(tau)) throw std::invalid_argument("re_from_tau: tau must be finite");
    if (near(theta, 0.5 * kPi)) {
        if (!equal_masses(m)) throw NoSolutionError("no relative equilibrium at theta = pi/2 for unequal masses");
        const double f = force_at(theta, m, pot);
        return right_angled_from_tau(f > 0.0 ? 0.25 * kPi : -0.25 * kPi, tau, m, pot);
    }
    if (!(theta > 0.0) || !(theta < kPi)) throw std::invalid_argument("re_from_tau: theta must lie in (0, pi)");
    const double f = force_at(theta, m, pot);
    const auto branches = lever_branches(theta, m, f);
    const auto it = std::find_if(branches.begin(), branches.end(), [](const LeverBranch& b) { return b.admissible; });
    if (it == branches.end()) throw NoSolutionError("re_from_tau: no admissible lever branch");
    const double eta = std::sqrt(f * std::sin(theta) / (2.0 * it->zeta * std::exp(tau)));
    return make_re(theta, eta, m, pot);
}

MomentumSquares momenta_at(double theta, double tau, const MassParams& m, const Potential& pot) {
    const RelativeEquilibrium re = re_from_tau(theta, tau, m, pot);
    return {momentum_left(re.state).norm2(), momentum_right(re.state).norm2()};
}

}  // namespace s3tb
