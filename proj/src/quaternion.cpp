#include "s3tb/quaternion.hpp"

#include <stdexcept>

namespace s3tb {

Quaternion Quaternion::inverse() const {
    const double n2 = norm2();
    if (n2 == 0.0) {
        throw std::domain_error("quaternion inverse: zero quaternion");
    }
    return conj() / n2;
}

double inner_product(const Quaternion& p, const Quaternion& q) {
    const Quaternion s = p * q.conj() + q * p.conj();
    return 0.5 * s.w;
}

ImaginaryQuaternion adjoint_bracket(const ImaginaryQuaternion& omega, const ImaginaryQuaternion& q) {
    const Quaternion a{omega};
    const Quaternion b{q};
    return (a * b - b * a).imag();
}

Matrix4 phi_double_cover(const Quaternion& l, const Quaternion& r) {
    if (!l.is_unit() || !r.is_unit()) {
        throw std::invalid_argument("phi_double_cover: l and r must be unit quaternions");
    }
    const Quaternion r_inv = r.conj();
    const Quaternion basis[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    Matrix4 out;
    for (int c = 0; c < 4; ++c) {
        out.col(c) = (l * basis[c] * r_inv).to_vector();
    }
    return out;
}

So4Element::So4Element(const Matrix4& m) : m_(m) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("So4Element: matrix is not antisymmetric");
    }
}

So4Element So4Element::from_blocks(const ImaginaryQuaternion& omega, const ImaginaryQuaternion& eta) {
    Matrix4 m = Matrix4::Zero();
    // hat(Omega) v = Omega x v
    m(0, 1) = -omega.z;
    m(0, 2) = omega.y;
    m(1, 0) = omega.z;
    m(1, 2) = -omega.x;
    m(2, 0) = -omega.y;
    m(2, 1) = omega.x;
    m(0, 3) = eta.x;
    m(1, 3) = eta.y;
    m(2, 3) = eta.z;
    m(3, 0) = -eta.x;
    m(3, 1) = -eta.y;
    m(3, 2) = -eta.z;
    return So4Element(m);
}

ImaginaryQuaternion So4Element::omega() const { return {m_(2, 1), m_(0, 2), m_(1, 0)}; }

ImaginaryQuaternion So4Element::eta() const { return {m_(0, 3), m_(1, 3), m_(2, 3)}; }

std::pair<ImaginaryQuaternion, ImaginaryQuaternion> so4_isom_pullback(const So4Element& L) {
    const auto om = L.omega();
    const auto et = L.eta();
    return {om + et, om - et};
}

So4Element so4_isom_pushforward(const ImaginaryQuaternion& a, const ImaginaryQuaternion& b) {
    return So4Element::from_blocks(0.5 * (a + b), 0.5 * (a - b));
}

const char* to_string(SubgroupKind kind) {
    switch (kind) {
        case SubgroupKind::trivial: return "trivial";
        case SubgroupKind::simple_rotation: return "simple";
        case SubgroupKind::isoclinic_rotation: return "isoclinic";
        case SubgroupKind::double_rotation: return "double";
    }
    return "unknown";
}

SubgroupKind classify_subgroup(double xi_mag, double eta_mag) {
    if (xi_mag < 0.0 || eta_mag < 0.0 || std::isnan(xi_mag) || std::isnan(eta_mag)) {
        throw std::invalid_argument("classify_subgroup: magnitudes must be non-negative");
    }
    const bool xi_zero = xi_mag == 0.0;
    const bool eta_zero = eta_mag == 0.0;
    if (xi_zero && eta_zero) return SubgroupKind::trivial;
    if (xi_zero || eta_zero) return SubgroupKind::isoclinic_rotation;
    if (std::abs(xi_mag - eta_mag) <= 1e-12 * std::max(xi_mag, eta_mag)) return SubgroupKind::simple_rotation;
    return SubgroupKind::double_rotation;
}

}  // namespace s3tb
