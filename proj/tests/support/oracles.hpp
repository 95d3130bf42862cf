#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls the library routine it is meant to check.

#include "s3tb/energy_casimir.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using s3tb::Quaternion;

inline constexpr double pi = std::numbers::pi;

/// Left multiplication by p as a 4x4 matrix in the basis (1, i, j, k).
inline Eigen::Matrix4d left_matrix(const Quaternion& p) {
    Eigen::Matrix4d m;
    m << p.w, -p.x, -p.y, -p.z,
         p.x,  p.w, -p.z,  p.y,
         p.y,  p.z,  p.w, -p.x,
         p.z, -p.y,  p.x,  p.w;
    return m;
}

inline Quaternion product(const Quaternion& p, const Quaternion& q) {
    return Quaternion::from_vector(left_matrix(p) * q.to_vector());
}

/// p^{-1} for unit p is the conjugate.
inline Quaternion unit_inverse(const Quaternion& p) { return {p.w, -p.x, -p.y, -p.z}; }

inline double dot4(const Quaternion& a, const Quaternion& b) { return a.to_vector().dot(b.to_vector()); }

/// (x1, x2) from the two linear equations in (x1/m1, x2/m2) obtained from Hamilton's
/// equations at a relative equilibrium in the gauge g_L = e^{i theta}, generator along j.
inline std::array<double, 2> re_linear_solve(double theta, double eta, double y, double m1, double m2) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    Eigen::Matrix2d A;
    A << -s, -s,
         -c,  c;
    Eigen::Vector2d b(2.0 * eta * s - y * (1.0 / m1 + 1.0 / m2) * c, y * (1.0 / m1 - 1.0 / m2) * s);
    const Eigen::Vector2d u = A.fullPivLu().solve(b);
    return {u[0] * m1, u[1] * m2};
}

/// Root of m1 sin 2phi = m2 sin 2(theta - phi) in (lo, hi) by bisection.
inline double lever_bisect(double theta, double m1, double m2, double lo, double hi) {
    auto g = [&](double p) { return m1 * std::sin(2.0 * p) - m2 * std::sin(2.0 * (theta - p)); };
    double glo = g(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Newtonian equations on S^3 x S^3 written directly in the embedding:
/// g_i' = p_i / m_i, p_i' = f(r) (g_j - r g_i) - |p_i|^2 / m_i g_i.
inline s3tb::FullVec newtonian_rhs(const s3tb::PhaseState& s, const s3tb::MassParams& m, double f) {
    const Eigen::Vector4d g1 = s.g1.to_vector();
    const Eigen::Vector4d g2 = s.g2.to_vector();
    const Eigen::Vector4d p1 = s.p1.to_vector();
    const Eigen::Vector4d p2 = s.p2.to_vector();
    const double r = g1.dot(g2);
    const Eigen::Vector4d dg1 = p1 / m.m1;
    const Eigen::Vector4d dg2 = p2 / m.m2;
    const Eigen::Vector4d dp1 = f * (g2 - r * g1) - p1.squaredNorm() / m.m1 * g1;
    const Eigen::Vector4d dp2 = f * (g1 - r * g2) - p2.squaredNorm() / m.m2 * g2;
    s3tb::FullVec out{};
    for (int k = 0; k < 4; ++k) {
        out[k] = dg1[k];
        out[4 + k] = dp1[k];
        out[8 + k] = dg2[k];
        out[12 + k] = dp2[k];
    }
    return out;
}

/// Central-difference Jacobian of an R^8 -> R^8 map.
inline Eigen::Matrix<double, 8, 8> fd_jacobian(const std::function<std::array<double, 8>(const std::array<double, 8>&)>& F,
                                               const std::array<double, 8>& x, double h = 1e-6) {
    Eigen::Matrix<double, 8, 8> J;
    for (int j = 0; j < 8; ++j) {
        auto xp = x;
        auto xm = x;
        xp[j] += h;
        xm[j] -= h;
        const auto fp = F(xp);
        const auto fm = F(xm);
        for (int i = 0; i < 8; ++i) J(i, j) = (fp[i] - fm[i]) / (2.0 * h);
    }
    return J;
}

/// Coefficients (constant term first) of prod (t - lambda_k).
inline std::vector<std::complex<double>> poly_from_roots(const std::vector<std::complex<double>>& roots) {
    std::vector<std::complex<double>> c{1.0};
    for (const auto& z : roots) {
        std::vector<std::complex<double>> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= z * c[k];
        }
        c = std::move(next);
    }
    return c;
}

/// Gravitational pairs written out from the quartic t^4 + c2 t^2 + c0 by the quadratic formula.
inline std::array<double, 2> quartic_t2_roots(double c2, double c0) {
    const double d = std::sqrt(std::max(0.0, c2 * c2 - 4.0 * c0));
    return {0.5 * (-c2 + d), 0.5 * (-c2 - d)};
}

/// Scalar triple product <a x b, c> of imaginary parts.
inline double triple(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
    return a.cross(b).dot(c);
}

/// Eight invariants (k11, k12, k13, k22, k23, k33, r, delta) from a state by Gram products of
/// R1 = g1^{-1} p1, R2 = g2^{-1} p2 and the imaginary part of g1^{-1} g2.
inline std::array<double, 8> invariants(const s3tb::PhaseState& s) {
    const Quaternion R1 = product(unit_inverse(s.g1), s.p1);
    const Quaternion R2 = product(unit_inverse(s.g2), s.p2);
    const Quaternion gL = product(unit_inverse(s.g1), s.g2);
    const Eigen::Vector3d v1(R1.x, R1.y, R1.z);
    const Eigen::Vector3d v2(R2.x, R2.y, R2.z);
    const Eigen::Vector3d v3(gL.x, gL.y, gL.z);
    return {v1.dot(v1), v1.dot(v2), v1.dot(v3), v2.dot(v2), v2.dot(v3), v3.dot(v3), gL.w, triple(v1, v2, v3)};
}

}  // namespace oracle
