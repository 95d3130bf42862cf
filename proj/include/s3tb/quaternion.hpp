#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>

namespace s3tb {

/// Tolerance on | |q| - 1 | for elements that must lie on the unit 3-sphere.
inline constexpr double kUnitTolerance = 1e-9;

/// Element of Im H, identified with R^3 through (x, y, z) = (i, j, k) coefficients.
struct ImaginaryQuaternion {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    constexpr ImaginaryQuaternion() = default;
    constexpr ImaginaryQuaternion(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    [[nodiscard]] constexpr double norm2() const { return x * x + y * y + z * z; }
    [[nodiscard]] double norm() const { return std::sqrt(norm2()); }

    constexpr ImaginaryQuaternion& operator+=(const ImaginaryQuaternion& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr ImaginaryQuaternion& operator-=(const ImaginaryQuaternion& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr ImaginaryQuaternion& operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
};

constexpr ImaginaryQuaternion operator+(ImaginaryQuaternion a, const ImaginaryQuaternion& b) { return a += b; }
constexpr ImaginaryQuaternion operator-(ImaginaryQuaternion a, const ImaginaryQuaternion& b) { return a -= b; }
constexpr ImaginaryQuaternion operator-(const ImaginaryQuaternion& a) { return {-a.x, -a.y, -a.z}; }
constexpr ImaginaryQuaternion operator*(double s, ImaginaryQuaternion a) { return a *= s; }
constexpr ImaginaryQuaternion operator*(ImaginaryQuaternion a, double s) { return a *= s; }
constexpr ImaginaryQuaternion operator/(ImaginaryQuaternion a, double s) { return a *= (1.0 / s); }

[[nodiscard]] constexpr double dot(const ImaginaryQuaternion& a, const ImaginaryQuaternion& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

[[nodiscard]] constexpr ImaginaryQuaternion cross(const ImaginaryQuaternion& a, const ImaginaryQuaternion& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Real quaternion w + x i + y j + z k, stored in (w, x, y, z) order.
struct Quaternion {
    double w{0.0};
    double x{0.0};
    double y{0.0};
    double z{0.0};

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    constexpr explicit Quaternion(double real) : w(real) {}
    // Im H sits inside H; the conversion is lossless so it is left implicit.
    constexpr Quaternion(const ImaginaryQuaternion& v) : x(v.x), y(v.y), z(v.z) {}  // NOLINT

    static Quaternion exp_axis(const ImaginaryQuaternion& unit_axis, double angle) {
        const double s = std::sin(angle);
        return {std::cos(angle), s * unit_axis.x, s * unit_axis.y, s * unit_axis.z};
    }
    /// e^{i angle}
    static Quaternion exp_i(double angle) { return {std::cos(angle), std::sin(angle), 0.0, 0.0}; }

    [[nodiscard]] constexpr double real() const { return w; }
    [[nodiscard]] constexpr ImaginaryQuaternion imag() const { return {x, y, z}; }
    [[nodiscard]] constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    [[nodiscard]] constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
    [[nodiscard]] double norm() const { return std::sqrt(norm2()); }
    /// Multiplicative inverse; throws std::domain_error for the zero quaternion.
    [[nodiscard]] Quaternion inverse() const;
    [[nodiscard]] bool is_unit(double tol = kUnitTolerance) const { return std::abs(norm() - 1.0) <= tol; }

    [[nodiscard]] Eigen::Vector4d to_vector() const { return {w, x, y, z}; }
    static Quaternion from_vector(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        w += o.w;
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        w -= o.w;
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        w *= s;
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

/// Hamilton product.
[[nodiscard]] constexpr Quaternion quat_mul(const Quaternion& p, const Quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return quat_mul(p, q); }

/// <p, q> = 1/2 (p q^dagger + q p^dagger), evaluated through the quaternion product.
[[nodiscard]] double inner_product(const Quaternion& p, const Quaternion& q);

/// [omega, q] = omega q - q omega, which equals 2 (omega x q).
[[nodiscard]] ImaginaryQuaternion adjoint_bracket(const ImaginaryQuaternion& omega, const ImaginaryQuaternion& q);

using Matrix4 = Eigen::Matrix4d;

/// Matrix of q -> l q r^{-1} in the basis (1, i, j, k). Both arguments must be unit quaternions.
[[nodiscard]] Matrix4 phi_double_cover(const Quaternion& l, const Quaternion& r);

/// Antisymmetric 4x4 matrix [[hat(Omega), eta], [-eta^T, 0]] with the distinguished
/// (vertical) direction in the last slot.
class So4Element {
public:
    /// Throws std::invalid_argument if `m` is not antisymmetric to 1e-12 (relative).
    explicit So4Element(const Matrix4& m);
    static So4Element from_blocks(const ImaginaryQuaternion& omega, const ImaginaryQuaternion& eta);

    [[nodiscard]] const Matrix4& matrix() const { return m_; }
    [[nodiscard]] ImaginaryQuaternion omega() const;
    [[nodiscard]] ImaginaryQuaternion eta() const;

private:
    Matrix4 m_;
};

/// L -> (Omega + eta, Omega - eta).
[[nodiscard]] std::pair<ImaginaryQuaternion, ImaginaryQuaternion> so4_isom_pullback(const So4Element& L);
/// Inverse of so4_isom_pullback.
[[nodiscard]] So4Element so4_isom_pushforward(const ImaginaryQuaternion& a, const ImaginaryQuaternion& b);

enum class SubgroupKind { trivial, simple_rotation, isoclinic_rotation, double_rotation };

[[nodiscard]] const char* to_string(SubgroupKind kind);

/// Type of the one-parameter subgroup generated by (|xi| j, |eta| j).
[[nodiscard]] SubgroupKind classify_subgroup(double xi_mag, double eta_mag);

}  // namespace s3tb
