#include "s3tb/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace s3tb {

const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

double InvariantPoint::det_k() const {
    return k11 * (k22 * k33 - k23 * k23) - k12 * (k12 * k33 - k23 * k13) + k13 * (k12 * k23 - k22 * k13);
}

double InvariantPoint::syzygy_residual() const { return delta * delta - det_k(); }

bool InvariantPoint::on_variety(double tol) const {
    if (k11 < -tol || k22 < -tol || k33 < -tol) return false;
    if (std::abs(syzygy_residual()) > tol) return false;
    return k12 * k12 <= k11 * k22 + tol && k13 * k13 <= k11 * k33 + tol && k23 * k23 <= k22 * k33 + tol;
}

ReducedState left_reduce(const PhaseState& s) {
    const Quaternion g1i = s.g1.inverse();
    return {(g1i * s.p1).imag(), (s.g2.inverse() * s.p2).imag(), g1i * s.g2, Side::left};
}

ReducedState right_reduce(const PhaseState& s) {
    const Quaternion g2i = s.g2.inverse();
    return {(s.p1 * s.g1.inverse()).imag(), (s.p2 * g2i).imag(), s.g1 * g2i, Side::right};
}

OrbitCoordinates orbit_diffeo(const ReducedState& rs) {
    const Quaternion& g = rs.gD;
    const Quaternion gi = g.inverse();
    const Quaternion a1{rs.A1};
    const Quaternion a2{rs.A2};
    const Quaternion conj2 = g * a2 * gi;
    return {((a1 * g + g * a2) * gi).imag(), (conj2 - a1).imag(), g};
}

ReducedState orbit_diffeo_inverse(const OrbitCoordinates& oc, Side side) {
    const Quaternion gi = oc.g.inverse();
    const ImaginaryQuaternion a1 = 0.5 * (oc.X - oc.Y);
    const Quaternion mid{0.5 * (oc.X + oc.Y)};
    return {a1, (gi * mid * oc.g).imag(), oc.g, side};
}

double casimir_C2_direct(const ReducedState& rs) {
    const Quaternion a1{rs.A1};
    const Quaternion a2{rs.A2};
    return (a1 * rs.gD + rs.gD * a2).norm2();
}

double casimir_C1(const InvariantPoint& pt) { return pt.k33 + pt.r * pt.r; }

double casimir_C2(const InvariantPoint& p) {
    const double r2 = p.r * p.r;
    return (p.k33 + r2) * (p.k11 + p.k22) + 2.0 * p.k12 * (r2 - p.k33) + 4.0 * p.k13 * p.k23 - 4.0 * p.r * p.delta;
}

double casimir_C3(const InvariantPoint& pt) { return pt.k11 + pt.k22 + 2.0 * pt.k12; }

CasimirValues casimirs(const ReducedState& rs, bool check) {
    CasimirValues c;
    c.C1 = rs.gD.norm2();
    c.C2 = casimir_C2(hilbert_map(rs));
    if (check) {
        const double direct = casimir_C2_direct(rs);
        if (std::abs(direct - c.C2) > 1e-10 * std::max(1.0, std::abs(direct))) {
            throw std::logic_error("casimirs: direct and invariant C2 disagree");
        }
    }
    return c;
}

CasimirValues casimirs(const InvariantPoint& pt) { return {casimir_C1(pt), casimir_C2(pt), casimir_C3(pt)}; }

InvariantPoint hilbert_map(const ReducedState& rs) {
    const ImaginaryQuaternion& v1 = rs.A1;
    const ImaginaryQuaternion& v2 = rs.A2;
    const ImaginaryQuaternion v3 = rs.gD.imag();
    InvariantPoint p;
    p.k11 = dot(v1, v1);
    p.k12 = dot(v1, v2);
    p.k13 = dot(v1, v3);
    p.k22 = dot(v2, v2);
    p.k23 = dot(v2, v3);
    p.k33 = dot(v3, v3);
    p.delta = dot(cross(v1, v2), v3);
    p.r = rs.gD.w;
    return p;
}

const char* to_string(Stratum s) {
    switch (s) {
        case Stratum::free: return "free";
        case Stratum::so2_isotropy: return "so2_isotropy";
        case Stratum::full_isotropy: return "full_isotropy";
    }
    return "unknown";
}

Stratum stratum_classify(const InvariantPoint& p, double tol) {
    const bool all_zero = std::abs(p.k11) <= tol && std::abs(p.k12) <= tol && std::abs(p.k13) <= tol &&
                          std::abs(p.k22) <= tol && std::abs(p.k23) <= tol && std::abs(p.k33) <= tol &&
                          std::abs(p.delta) <= tol;
    if (all_zero) return Stratum::full_isotropy;
    const bool colinear = std::abs(p.k12 * p.k12 - p.k11 * p.k22) <= tol &&
                          std::abs(p.k13 * p.k13 - p.k11 * p.k33) <= tol &&
                          std::abs(p.k23 * p.k23 - p.k22 * p.k33) <= tol && std::abs(p.delta) <= tol;
    return colinear ? Stratum::so2_isotropy : Stratum::free;
}

double degenerate_leaf_sample(double lambda_mag, double k13, double theta) {
    if (lambda_mag < 0.0) {
        throw std::invalid_argument("degenerate_leaf_sample: |lambda| must be non-negative");
    }
    const double s = std::sin(theta);
    if (std::abs(s) < 1e-15) {
        throw std::domain_error("degenerate_leaf_sample: sin(theta) = 0");
    }
    return (lambda_mag * lambda_mag + 4.0 * k13 * k13) / (4.0 * s * s);
}

std::string invariant_csv_header() { return "k11,k12,k13,k22,k23,k33,delta,r"; }

std::string invariant_csv_row(const InvariantPoint& p) {
    std::ostringstream os;
    os.precision(17);
    os << p.k11 << ',' << p.k12 << ',' << p.k13 << ',' << p.k22 << ',' << p.k23 << ',' << p.k33 << ',' << p.delta
       << ',' << p.r;
    return os.str();
}

InvariantPoint invariants_of(const PhaseState& s) { return hilbert_map(left_reduce(s)); }

}  // namespace s3tb
