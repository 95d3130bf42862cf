#include "s3tb/stability.hpp"

#include "s3tb/eigen_qr.hpp"
#include "s3tb/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace s3tb {

const char* to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::linearly_stable: return "linearly_stable";
        case StabilityClass::linearly_unstable: return "linearly_unstable";
        case StabilityClass::degenerate: return "degenerate";
    }
    return "unknown";
}

Matrix8 linearization_matrix(const InvariantPoint& p, const MassParams& m, const Potential& pot, double tol) {
    if (std::abs(p.k13) > tol || std::abs(p.k23) > tol) {
        throw std::invalid_argument("linearize: k13 and k23 must vanish at a relative equilibrium");
    }
    const double f = pot.force(p.r, m);
    const double df = pot.dforce(p.r, m);
    const double m1 = m.m1;
    const double m2 = m.m2;
    const double r = p.r;
    const double A1 = df * p.k33 - (p.k11 / m1 - p.k12 / m2);
    const double A2 = -df * p.k33 - (p.k12 / m1 - p.k22 / m2);
    const double A3 = p.k12 / m1 + p.k22 / m2;
    const double A4 = -p.k11 / m1 - p.k12 / m2;
    Matrix8 J = Matrix8::Zero();
    J(0, 2) = 2.0 * f;
    J(1, 2) = -f;
    J(1, 4) = f;
    J(2, 0) = -r / m1;
    J(2, 1) = r / m2;
    J(2, 5) = f;
    J(2, 6) = A1;
    J(2, 7) = -1.0 / m2;
    J(3, 4) = -2.0 * f;
    J(4, 1) = -r / m1;
    J(4, 3) = r / m2;
    J(4, 5) = -f;
    J(4, 6) = A2;
    J(4, 7) = 1.0 / m1;
    J(5, 2) = -2.0 * r / m1;
    J(5, 4) = 2.0 * r / m2;
    J(6, 2) = 1.0 / m1;
    J(6, 4) = -1.0 / m2;
    J(7, 2) = A3;
    J(7, 4) = A4;
    return J;
}

namespace {

// ev sorted by magnitude; the first `zeros` entries are taken as zero.
StabilityClass classify_sorted(const std::vector<std::complex<double>>& ev, int zeros) {
    for (std::size_t i = static_cast<std::size_t>(std::max(zeros, 0)); i < ev.size(); ++i) {
        if (std::abs(ev[i].real()) > kRealPartThreshold) return StabilityClass::linearly_unstable;
    }
    return zeros == 4 ? StabilityClass::linearly_stable : StabilityClass::degenerate;
}

}  // namespace

StabilityClass classify_stability(const std::vector<std::complex<double>>& ev, int* zero_count, double zero_tol) {
    int zeros = 0;
    bool unstable = false;
    for (const auto& e : ev) {
        if (std::abs(e) < zero_tol) {
            ++zeros;
        } else if (std::abs(e.real()) > kRealPartThreshold) {
            unstable = true;
        }
    }
    if (zero_count) *zero_count = zeros;
    if (unstable) return StabilityClass::linearly_unstable;
    return zeros == 4 ? StabilityClass::linearly_stable : StabilityClass::degenerate;
}

StabilityClass classify_stability(const LinearizationReport& report) {
    return classify_sorted(report.eigenvalues, report.zero_count);
}

int zero_multiplicity(const std::vector<std::complex<double>>& ev) {
    const int n = static_cast<int>(ev.size());
    double rho = 0.0;
    for (const auto& z : ev) rho = std::max(rho, std::abs(z));
    if (rho == 0.0) return n;
    // e[j]: elementary symmetric polynomial of degree j in ev / rho; t^k has coefficient +-e[n - k]
    std::vector<std::complex<double>> e(n + 1, 0.0);
    e[0] = 1.0;
    for (const auto& z : ev) {
        for (int j = n; j >= 1; --j) e[j] += e[j - 1] * (z / rho);
    }
    for (int k = 0; k < n; ++k) {
        const int j = n - k;
        double binom = 1.0;
        for (int i = 1; i <= j; ++i) binom = binom * (n - j + i) / i;
        if (std::abs(e[j]) > kCoefficientTolerance * binom) return k;
    }
    return n;
}

LinearizationReport linearize(const RelativeEquilibrium& re, const MassParams& m, const Potential& pot) {
    LinearizationReport rep;
    rep.matrix = linearization_matrix(invariants_of(re.state), m, pot);
    rep.eigenvalues = eigenvalues(rep.matrix);
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), [](const auto& a, const auto& b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    rep.zero_count = zero_multiplicity(rep.eigenvalues);
    rep.classification = classify_sorted(rep.eigenvalues, rep.zero_count);
    return rep;
}

LinearizationReport linearize(const RelativeEquilibrium& re) { return linearize(re, re.masses, re.potential); }

namespace {
double cot_csc2(double theta) {
    const double s = std::sin(theta);
    return std::cos(theta) / (s * s * s);
}
}  // namespace

CharPoly charpoly_2body(double theta, double k11, double k22, const MassParams& m) {
    const double m1 = m.m1;
    const double m2 = m.m2;
    const double K = cot_csc2(theta);
    CharPoly c;
    c.c2 = 2.0 * (k11 / (m1 * m1) + k22 / (m2 * m2) + (m1 + m2) * K);
    const double d = k11 / (m1 * m1) - k22 / (m2 * m2);
    const double mid = k11 / m1 * (1.0 + m2 / m1) + k22 / m2 * (1.0 + m1 / m2);
    const double last = (m1 + m2) * K;
    c.c0 = d * d + 2.0 * K * mid + last * last;
    return c;
}

CharPoly charpoly_2body(const RelativeEquilibrium& re) {
    const InvariantPoint p = invariants_of(re.state);
    return charpoly_2body(re.theta, p.k11, p.k22, re.masses);
}

ClosedFormPairs closed_form_eigs_2body(double theta, double k11, double k22, const MassParams& m) {
    const double a = std::sqrt(std::max(0.0, k11)) / m.m1;
    const double b = std::sqrt(std::max(0.0, k22)) / m.m2;
    const double shift = (m.m1 + m.m2) * cot_csc2(theta);
    ClosedFormPairs out;
    out.z2 = -(a + b) * (a + b) - shift;
    out.w2 = -(a - b) * (a - b) - shift;
    out.z = std::sqrt(std::complex<double>(out.z2, 0.0));
    out.w = std::sqrt(std::complex<double>(out.w2, 0.0));
    return out;
}

ClosedFormPairs closed_form_eigs_2body(const RelativeEquilibrium& re) {
    const InvariantPoint p = invariants_of(re.state);
    return closed_form_eigs_2body(re.theta, p.k11, p.k22, re.masses);
}

LagrangeCharPoly charpoly_lagrange(const RelativeEquilibrium& re, double alpha, double gamma) {
    const InvariantPoint p = invariants_of(re.state);
    LagrangeCharPoly out;
    out.right_angled = re.kind == REKind::right_angled;
    if (out.right_angled) {
        const double a = std::sqrt(std::max(0.0, p.k11));
        const double b = std::sqrt(std::max(0.0, p.k22));
        const double a2 = alpha * alpha;
        out.c2 = 2.0 * a2 * (p.k11 + p.k22);
        out.c0 = a2 * a2 * (p.k11 - p.k22) * (p.k11 - p.k22);
        out.s1 = -a2 * (a + b) * (a + b);
        out.s2 = -a2 * (a - b) * (a - b);
    } else {
        const double c = std::cos(re.theta);
        out.s1 = 2.0 * alpha * gamma * c;
        out.s2 = -(4.0 * alpha * alpha * p.k11 - 8.0 * alpha * gamma * c);
        out.c2 = -(out.s1 + out.s2);
        out.c0 = out.s1 * out.s2;
    }
    for (double s : {out.s1, out.s2}) {
        const std::complex<double> root = std::sqrt(std::complex<double>(s, 0.0));
        out.roots.push_back(root);
        out.roots.push_back(-root);
    }
    return out;
}

std::pair<double, double> lagrange_spin_identity(const RelativeEquilibrium& re, double alpha, double gamma) {
    const InvariantPoint p = invariants_of(re.state);
    const double c = std::cos(re.theta);
    const double e2 = re.eta_mag * re.eta_mag;
    return {4.0 * alpha * alpha * p.k11 - 8.0 * alpha * gamma * c,
            4.0 * e2 + alpha * alpha * gamma * gamma / e2 - 4.0 * alpha * gamma * c};
}

std::pair<double, double> positivity_identity(const RelativeEquilibrium& re) {
    const CharPoly cp = charpoly_2body(re);
    const double s = std::sin(re.theta);
    const double c = std::cos(re.theta);
    const double s6 = std::pow(s, 6);
    const double e2 = re.eta_mag * re.eta_mag;
    const double m1 = re.masses.m1;
    const double m2 = re.masses.m2;
    const double rhs = (16.0 * e2 * e2 * c * c * s6 + m1 * m1 + m2 * m2 + 2.0 * m1 * m2 * std::cos(2.0 * re.theta)) /
                       (8.0 * e2 * s6 * c * c);
    return {0.5 * cp.c2, rhs};
}

std::vector<std::complex<double>> nonzero_eigenvalues(const LinearizationReport& report) {
    std::vector<std::complex<double>> ev = report.eigenvalues;
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return std::abs(a) < std::abs(b); });
    if (ev.size() <= 4) return {};
    return {ev.begin() + 4, ev.end()};
}

double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
    if (a.size() != b.size()) throw std::invalid_argument("multiset_distance: sizes differ");
    const std::size_t n = a.size();
    if (n == 0) return 0.0;
    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::abs(a[i] - b[j]);
    std::vector<double> cand = d;
    std::sort(cand.begin(), cand.end());

    // Bottleneck matching: smallest threshold admitting a perfect matching (augmenting paths).
    std::vector<std::size_t> match(n);
    std::vector<char> seen(n);
    auto perfect = [&](double t) {
        constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
        std::fill(match.begin(), match.end(), none);
        std::function<bool(std::size_t)> augment = [&](std::size_t i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (d[i * n + j] > t || seen[j]) continue;
                seen[j] = 1;
                if (match[j] == none || augment(match[j])) {
                    match[j] = i;
                    return true;
                }
            }
            return false;
        };
        for (std::size_t i = 0; i < n; ++i) {
            std::fill(seen.begin(), seen.end(), 0);
            if (!augment(i)) return false;
        }
        return true;
    };
    std::size_t lo = 0;
    std::size_t hi = cand.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (perfect(cand[mid])) hi = mid;
        else lo = mid + 1;
    }
    return cand[lo];
}

int lagrange_linearisation_rank(const RelativeEquilibrium& re, double alpha, double gamma) {
    const InvariantPoint p0 = invariants_of(re.state);
    const HamiltonianKind kind = HamiltonianKind::lagrange_altered(alpha, gamma);
    const Matrix8 JH = linearization_matrix(p0, kind.masses, kind.potential);
    Matrix8 JI = Matrix8::Zero();
    const double h = 1e-6;
    const auto base = p0.to_array();
    for (std::size_t j = 0; j < 8; ++j) {
        auto xp = base;
        auto xm = base;
        xp[j] += h;
        xm[j] -= h;
        const InvariantPoint pp = InvariantPoint::from_array(xp);
        const InvariantPoint pm = InvariantPoint::from_array(xm);
        const InvariantVec fp = table_flow_unchecked(integral_I_gradient(pp, alpha, gamma), pp);
        const InvariantVec fm = table_flow_unchecked(integral_I_gradient(pm, alpha, gamma), pm);
        for (std::size_t i = 0; i < 8; ++i) JI(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (fp[i] - fm[i]) / (2.0 * h);
    }
    Eigen::Matrix<double, 2, 16> stacked;
    for (int j = 0; j < 8; ++j) {
        stacked(0, j) = JH(0, j);
        stacked(0, 8 + j) = JH(3, j);
        stacked(1, j) = JI(0, j);
        stacked(1, 8 + j) = JI(3, j);
    }
    const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::Matrix<double, 2, 16>>(stacked).singularValues();
    if (sv[0] == 0.0) return 0;
    return sv[1] > 1e-6 * sv[0] ? 2 : 1;
}

double c0_at(double theta, double tau, const MassParams& m) {
    const RelativeEquilibrium re = re_from_tau(theta, tau, m, Potential::gravitational());
    return charpoly_2body(re).c0;
}

Eigen::Matrix2d momentum_jacobian(double theta, double tau, const MassParams& m, const Potential& pot, double h) {
    auto F = [&](double a, double b) {
        const MomentumSquares q = momenta_at(a, b, m, pot);
        return Eigen::Vector2d(q.lam2, q.rho2);
    };
    auto central = [&](double step) {
        Eigen::Matrix2d J;
        J.col(0) = (F(theta + step, tau) - F(theta - step, tau)) / (2.0 * step);
        J.col(1) = (F(theta, tau + step) - F(theta, tau - step)) / (2.0 * step);
        return J;
    };
    const Eigen::Matrix2d d1 = central(h);
    const Eigen::Matrix2d d2 = central(0.5 * h);
    const Eigen::Matrix2d d4 = central(0.25 * h);
    const Eigen::Matrix2d r1 = (4.0 * d2 - d1) / 3.0;
    const Eigen::Matrix2d r2 = (4.0 * d4 - d2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

std::optional<FoldReport> fold_locus(double theta, const MassParams& m) {
    constexpr double pi = std::numbers::pi;
    if (!(theta > 0.5 * pi) || !(theta < pi)) {
        throw std::invalid_argument("fold_locus: theta must lie in (pi/2, pi)");
    }
    auto c0u = [&](double u) { return c0_at(theta, std::acosh(u), m); };
    double lo = 1.0;
    const double c_lo = c0u(lo);
    if (c_lo == 0.0) {
        FoldReport rep;
        rep.theta = theta;
        return rep;
    }
    double hi = 2.0;
    double c_hi = c0u(hi);
    while ((c_hi > 0.0) == (c_lo > 0.0)) {
        hi *= 2.0;
        if (hi > 1e12) return std::nullopt;
        c_hi = c0u(hi);
    }
    for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double cm = c0u(mid);
        if ((cm > 0.0) == (c_lo > 0.0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double u = 0.5 * (lo + hi);
    FoldReport rep;
    rep.theta = theta;
    rep.tau = std::acosh(u);
    rep.c0_at_fold = c0u(u);
    const Potential grav = Potential::gravitational();
    const Eigen::Matrix2d J = momentum_jacobian(theta, rep.tau, m, grav);
    rep.jacobian_det = J.determinant();
    const double norm = J.row(0).norm() * J.row(1).norm();
    rep.jacobian_det_normalised = norm > 0.0 ? rep.jacobian_det / norm : 0.0;
    const double u_below = std::max(1.0, 0.99 * u);
    const double u_above = 1.01 * u;
    rep.c0_below = c0u(u_below);
    rep.c0_above = c0u(u_above);
    rep.w2_below = closed_form_eigs_2body(re_from_tau(theta, std::acosh(u_below), m, grav)).w2;
    rep.w2_above = closed_form_eigs_2body(re_from_tau(theta, std::acosh(u_above), m, grav)).w2;
    return rep;
}

}  // namespace s3tb
