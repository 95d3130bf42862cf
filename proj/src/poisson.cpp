#include "s3tb/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace s3tb {

namespace {

Quaternion commutator(const Quaternion& a, const Quaternion& b) { return a * b - b * a; }

enum Idx : std::size_t { K11 = 0, K12, K13, K22, K23, K33, R, D };

}  // namespace

double lie_poisson_bracket(const GradientTriple& f, const GradientTriple& g, const ReducedState& at) {
    const Quaternion f1{f.d1}, f2{f.d2}, g1{g.d1}, g2{g.d2};
    const double t1 = inner_product(Quaternion{at.A1}, commutator(f1, g1));
    const double t2 = inner_product(Quaternion{at.A2}, commutator(f2, g2));
    const Quaternion mixed = (f1 * g.d3 - g.d3 * f2) - (g1 * f.d3 - f.d3 * g2);
    const double t3 = inner_product(at.gD, mixed);
    const double sign = at.side == Side::left ? 1.0 : -1.0;
    return sign * (t1 + t2 + t3);
}

double lie_poisson_bracket(const GradientField& f, const GradientField& g, const ReducedState& at) {
    return lie_poisson_bracket(f(at), g(at), at);
}

GradientTriple generator_gradient(std::size_t index, const ReducedState& at) {
    const ImaginaryQuaternion& v1 = at.A1;
    const ImaginaryQuaternion& v2 = at.A2;
    const ImaginaryQuaternion v3 = at.gD.imag();
    const ImaginaryQuaternion z{};
    switch (index) {
        case K11: return {2.0 * v1, z, Quaternion{}};
        case K12: return {v2, v1, Quaternion{}};
        case K13: return {v3, z, Quaternion{v1}};
        case K22: return {z, 2.0 * v2, Quaternion{}};
        case K23: return {z, v3, Quaternion{v2}};
        case K33: return {z, z, Quaternion{2.0 * v3}};
        case R: return {z, z, Quaternion{1.0}};
        case D: return {cross(v2, v3), cross(v3, v1), Quaternion{cross(v1, v2)}};
        default: throw std::out_of_range("generator_gradient: index must be below 8");
    }
}

GradientTriple hamiltonian_gradient(const ReducedState& at, const MassParams& m, const Potential& pot) {
    const double f = pot.force(at.gD.w, m);
    return {at.A1 / m.m1, at.A2 / m.m2, Quaternion{-f}};
}

GradientTriple casimir_C1_gradient(const ReducedState& at) { return {{}, {}, 2.0 * at.gD}; }

GradientTriple casimir_C2_gradient(const ReducedState& at) {
    const Quaternion a1{at.A1};
    const Quaternion a2{at.A2};
    const Quaternion w = a1 * at.gD + at.gD * a2;
    const Quaternion gc = at.gD.conj();
    return {2.0 * (w * gc).imag(), 2.0 * (gc * w).imag(), -2.0 * (a1 * w + w * a2)};
}

double table_bracket(std::size_t a, std::size_t b, const InvariantPoint& p) {
    if (a >= 8 || b >= 8) throw std::out_of_range("table_bracket: index must be below 8");
    if (a == b) return 0.0;
    if (a > b) return -table_bracket(b, a, p);
    const double r = p.r;
    const double d = p.delta;
    switch (a) {
        case K11:
            switch (b) {
                case K12: return 0.0;
                case K13: return -2.0 * r * p.k11;
                case K22: return 0.0;
                case K23: return 2.0 * d - 2.0 * r * p.k12;
                case K33: return -4.0 * r * p.k13;
                case R: return 2.0 * p.k13;
                case D: return 2.0 * (p.k12 * p.k13 - p.k11 * p.k23);
            }
            break;
        case K12:
            switch (b) {
                case K13: return r * (p.k11 - p.k12) + d;
                case K22: return 0.0;
                case K23: return r * (p.k12 - p.k22) - d;
                case K33: return 2.0 * r * (p.k13 - p.k23);
                case R: return p.k23 - p.k13;
                case D: return (p.k11 + p.k12) * p.k23 - (p.k12 + p.k22) * p.k13;
            }
            break;
        case K13:
            switch (b) {
                case K22: return 2.0 * d - 2.0 * r * p.k12;
                case K23: return -r * (p.k13 + p.k23);
                case K33: return -2.0 * r * p.k33;
                case R: return p.k33;
                case D: return (p.k11 + p.k12) * p.k33 - (p.k13 + p.k23) * p.k13;
            }
            break;
        case K22:
            switch (b) {
                case K23: return 2.0 * r * p.k22;
                case K33: return 4.0 * r * p.k23;
                case R: return -2.0 * p.k23;
                case D: return 2.0 * (p.k13 * p.k22 - p.k12 * p.k23);
            }
            break;
        case K23:
            switch (b) {
                case K33: return 2.0 * r * p.k33;
                case R: return -p.k33;
                case D: return (p.k13 + p.k23) * p.k23 - (p.k12 + p.k22) * p.k33;
            }
            break;
        case K33:
        case R: return 0.0;
    }
    return 0.0;
}

Eigen::Matrix<double, 8, 8> structure_matrix(const InvariantPoint& at) {
    Eigen::Matrix<double, 8, 8> m;
    for (std::size_t a = 0; a < 8; ++a) {
        for (std::size_t b = 0; b < 8; ++b) m(a, b) = table_bracket(a, b, at);
    }
    return m;
}

double invariant_bracket(const InvariantGradient& F, const InvariantGradient& G, const InvariantPoint& at) {
    double s = 0.0;
    for (std::size_t a = 0; a < 8; ++a) {
        if (F[a] == 0.0) continue;
        for (std::size_t b = 0; b < 8; ++b) {
            if (G[b] != 0.0) s += F[a] * G[b] * table_bracket(a, b, at);
        }
    }
    return s;
}

InvariantVec table_flow_unchecked(const InvariantGradient& grad, const InvariantPoint& at) {
    InvariantVec out{};
    for (std::size_t a = 0; a < 8; ++a) {
        double s = 0.0;
        for (std::size_t b = 0; b < 8; ++b) {
            if (grad[b] != 0.0) s += grad[b] * table_bracket(b, a, at);
        }
        out[a] = s;
    }
    return out;
}

InvariantVec table_flow(const InvariantGradient& grad, const InvariantPoint& at, double tol) {
    const double scale = std::max({1.0, std::abs(at.k11), std::abs(at.k22), std::abs(at.k33)});
    if (std::abs(at.syzygy_residual()) > tol * scale * scale * scale ||
        at.k12 * at.k12 > at.k11 * at.k22 + tol * scale * scale ||
        at.k13 * at.k13 > at.k11 * at.k33 + tol * scale * scale ||
        at.k23 * at.k23 > at.k22 * at.k33 + tol * scale * scale) {
        throw std::domain_error("table_flow: point is off the invariant variety");
    }
    return table_flow_unchecked(grad, at);
}

InvariantGradient hamiltonian_gradient(const HamiltonianKind& kind, const InvariantPoint& at) {
    InvariantGradient g{};
    switch (kind.tag) {
        case HamiltonianTag::two_body:
            g[K11] = 0.5 / kind.masses.m1;
            g[K22] = 0.5 / kind.masses.m2;
            g[R] = -kind.potential.force(at.r, kind.masses);
            break;
        case HamiltonianTag::lagrange:
            g[K11] = g[K22] = 0.25 * (1.0 + kind.alpha);
            g[K12] = 0.5 * (1.0 - kind.alpha);
            g[R] = kind.gamma;
            break;
        case HamiltonianTag::lagrange_altered:
            g[K11] = g[K22] = 0.5 * kind.alpha;
            g[R] = kind.gamma;
            break;
    }
    return g;
}

InvariantGradient casimir_gradient(int which, const InvariantPoint& p) {
    InvariantGradient g{};
    switch (which) {
        case 1:
            g[K33] = 1.0;
            g[R] = 2.0 * p.r;
            break;
        case 2: {
            const double c1 = p.k33 + p.r * p.r;
            g[K11] = g[K22] = c1;
            g[K12] = 2.0 * (p.r * p.r - p.k33);
            g[K13] = 4.0 * p.k23;
            g[K23] = 4.0 * p.k13;
            g[K33] = p.k11 + p.k22 - 2.0 * p.k12;
            g[R] = 2.0 * p.r * (p.k11 + p.k22) + 4.0 * p.r * p.k12 - 4.0 * p.delta;
            g[D] = -4.0 * p.r;
            break;
        }
        case 3:
            g[K11] = g[K22] = 1.0;
            g[K12] = 2.0;
            break;
        default: throw std::invalid_argument("casimir_gradient: which must be 1, 2 or 3");
    }
    return g;
}

InvariantGradient integral_I_gradient(const InvariantPoint& p, double alpha, double gamma) {
    InvariantGradient g{};
    g[K11] = -alpha * p.k22;
    g[K12] = 2.0 * alpha * p.k12;
    g[K22] = -alpha * p.k11;
    g[D] = -2.0 * gamma;
    return g;
}

double integral_I(const InvariantPoint& p, double alpha, double gamma) {
    return alpha * (p.k12 * p.k12 - p.k11 * p.k22) - 2.0 * gamma * p.delta;
}

}  // namespace s3tb
