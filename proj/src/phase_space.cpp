#include "s3tb/phase_space.hpp"

#include "s3tb/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace s3tb {

bool PhaseState::is_valid(double tol) const {
    return g1.is_unit(tol) && g2.is_unit(tol) && std::abs(inner_product(p1, g1)) <= tol &&
           std::abs(inner_product(p2, g2)) <= tol;
}

void PhaseState::validate() const {
    if (!g1.is_unit() || !g2.is_unit()) {
        throw std::invalid_argument("PhaseState: positions must be unit quaternions");
    }
    if (std::abs(inner_product(p1, g1)) > kUnitTolerance || std::abs(inner_product(p2, g2)) > kUnitTolerance) {
        throw std::invalid_argument("PhaseState: momenta must be tangent to the sphere");
    }
}

MassParams::MassParams(double m1_, double m2_) : m1(m1_), m2(m2_) {
    if (!(m1 > 0.0) || !(m2 > 0.0) || !std::isfinite(m1) || !std::isfinite(m2)) {
        throw std::invalid_argument("MassParams: masses must be finite and positive");
    }
}

MassParams MassParams::lagrange(double alpha) {
    if (!(alpha > 0.0) || alpha > 2.0) {
        throw std::invalid_argument("lagrange top requires 0 < alpha <= 2");
    }
    return {1.0 / alpha, 1.0 / alpha};
}

Potential Potential::gravitational() {
    Potential p;
    p.kind_ = PotentialKind::gravitational;
    return p;
}

Potential Potential::linear(double gamma) {
    if (!std::isfinite(gamma) || gamma == 0.0) {
        throw std::invalid_argument("linear potential requires a finite nonzero gamma");
    }
    Potential p;
    p.kind_ = PotentialKind::linear;
    p.gamma_ = gamma;
    return p;
}

Potential Potential::custom(Fn value, Fn force, Fn dforce) {
    if (!value || !force) {
        throw std::invalid_argument("custom potential requires value and force evaluators");
    }
    Potential p;
    p.kind_ = PotentialKind::custom;
    p.value_ = std::move(value);
    p.force_ = std::move(force);
    p.dforce_ = std::move(dforce);
    return p;
}

Potential Potential::parse(const std::string& spec) {
    if (spec == "grav" || spec == "gravitational") {
        return gravitational();
    }
    const auto colon = spec.find(':');
    if (colon != std::string::npos && spec.substr(0, colon) == "linear") {
        std::size_t used = 0;
        const std::string num = spec.substr(colon + 1);
        double gamma = 0.0;
        try {
            gamma = std::stod(num, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != num.size()) {
            throw std::invalid_argument("bad linear potential spec: " + spec);
        }
        return linear(gamma);
    }
    throw std::invalid_argument("unknown potential: " + spec + " (expected grav or linear:<gamma>)");
}

std::string Potential::describe() const {
    switch (kind_) {
        case PotentialKind::gravitational: return "grav";
        case PotentialKind::linear: {
            std::ostringstream os;
            os.precision(17);
            os << "linear:" << gamma_;
            return os.str();
        }
        case PotentialKind::custom: return "custom";
    }
    return "unknown";
}

void Potential::check_regular(double r) const {
    if (kind_ == PotentialKind::gravitational && !(1.0 - std::abs(r) > kCollisionGuard)) {
        throw SingularityError(r > 0 ? "gravitational potential: collision" : "gravitational potential: antipodal", r);
    }
}

double Potential::value(double r, const MassParams& m) const {
    switch (kind_) {
        case PotentialKind::gravitational: {
            check_regular(r);
            return -m.m1 * m.m2 * r / std::sqrt(1.0 - r * r);
        }
        case PotentialKind::linear: return gamma_ * r;
        case PotentialKind::custom: return value_(r);
    }
    return 0.0;
}

double Potential::force(double r, const MassParams& m) const {
    switch (kind_) {
        case PotentialKind::gravitational: {
            check_regular(r);
            const double s2 = 1.0 - r * r;
            return m.m1 * m.m2 / (s2 * std::sqrt(s2));
        }
        case PotentialKind::linear: return -gamma_;
        case PotentialKind::custom: return force_(r);
    }
    return 0.0;
}

double Potential::dforce(double r, const MassParams& m) const {
    switch (kind_) {
        case PotentialKind::gravitational: {
            check_regular(r);
            const double s2 = 1.0 - r * r;
            return 3.0 * m.m1 * m.m2 * r / (s2 * s2 * std::sqrt(s2));
        }
        case PotentialKind::linear: return 0.0;
        case PotentialKind::custom: {
            if (dforce_) return dforce_(r);
            const double h = 1e-6;
            return (force_(r + h) - force_(r - h)) / (2.0 * h);
        }
    }
    return 0.0;
}

double hamiltonian_2body(const PhaseState& s, const MassParams& m, const Potential& pot) {
    const double r = s.separation_cosine();
    return s.p1.norm2() / (2.0 * m.m1) + s.p2.norm2() / (2.0 * m.m2) + pot.value(r, m);
}

double hamiltonian_lagrange(const PhaseState& s, double alpha, double gamma) {
    if (!(alpha > 0.0) || alpha > 2.0) {
        throw std::invalid_argument("hamiltonian_lagrange: alpha must lie in (0, 2]");
    }
    const Quaternion R1 = s.g1.inverse() * s.p1;
    const Quaternion R2 = s.g2.inverse() * s.p2;
    return 0.25 * (1.0 + alpha) * (s.p1.norm2() + s.p2.norm2()) + 0.5 * (1.0 - alpha) * inner_product(R1, R2) +
           gamma * inner_product(s.g1, s.g2);
}

ImaginaryQuaternion momentum_left(const PhaseState& s) {
    return (s.p1 * s.g1.inverse() + s.p2 * s.g2.inverse()).imag();
}

ImaginaryQuaternion momentum_right(const PhaseState& s) {
    return (s.g1.inverse() * s.p1 + s.g2.inverse() * s.p2).imag();
}

const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::generic: return "generic";
        case PointClass::cospherical: return "cospherical";
        case PointClass::cocircular: return "cocircular";
    }
    return "unknown";
}

PointClass classify_point(const PhaseState& s) {
    Eigen::Matrix4d cols;
    cols.col(0) = s.g1.to_vector();
    cols.col(1) = s.p1.to_vector();
    cols.col(2) = s.g2.to_vector();
    cols.col(3) = s.p2.to_vector();
    const Eigen::Vector4d sv = Eigen::JacobiSVD<Eigen::Matrix4d>(cols).singularValues();
    const double cutoff = 1e-9 * sv[0];
    int rank = 0;
    for (int i = 0; i < 4; ++i) {
        if (sv[i] > cutoff) ++rank;
    }
    if (rank <= 2) return PointClass::cocircular;
    if (rank == 3) return PointClass::cospherical;
    return PointClass::generic;
}

std::pair<double, double> verify_cospherical_identity(const PhaseState& s) {
    const ImaginaryQuaternion lam = momentum_left(s);
    const ImaginaryQuaternion rho = momentum_right(s);
    const Quaternion L1 = s.p1 * s.g1.inverse();
    const Quaternion L2 = s.p2 * s.g2.inverse();
    const Quaternion R1 = s.g1.inverse() * s.p1;
    const Quaternion R2 = s.g2.inverse() * s.p2;
    return {lam.norm2() - rho.norm2(), 2.0 * inner_product(L1, L2) - 2.0 * inner_product(R1, R2)};
}

SliceCheck sjamaar_slice_check(const PhaseState& s) {
    constexpr double tol = 1e-12;
    for (const Quaternion* q : {&s.g1, &s.p1, &s.g2, &s.p2}) {
        if (std::abs(q->w) > tol) {
            throw std::invalid_argument("sjamaar_slice_check: all components must be purely imaginary");
        }
    }
    SliceCheck out;
    out.omega = cross(s.g1.imag(), s.p1.imag()) + cross(s.g2.imag(), s.p2.imag());
    out.lambda = momentum_left(s);
    out.rho = momentum_right(s);
    return out;
}

PhaseState act(const Quaternion& l, const Quaternion& r, const PhaseState& s) {
    const Quaternion r_inv = r.inverse();
    return {l * s.g1 * r_inv, l * s.p1 * r_inv, l * s.g2 * r_inv, l * s.p2 * r_inv};
}

namespace {

Eigen::Vector4d gaussian4(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Vector4d v;
    for (int i = 0; i < 4; ++i) v[i] = n(rng);
    return v;
}

// Orthonormal basis of a random `dim`-dimensional subspace of R^4, as matrix columns.
Eigen::MatrixXd random_subspace(Rng& rng, int dim) {
    Eigen::Matrix4d a;
    for (int c = 0; c < 4; ++c) a.col(c) = gaussian4(rng);
    Eigen::HouseholderQR<Eigen::Matrix4d> qr(a);
    const Eigen::Matrix4d q = qr.householderQ();
    return q.leftCols(dim);
}

// Unit vector and tangent momentum drawn inside the span of `basis`.
std::pair<Quaternion, Quaternion> draw_in_span(Rng& rng, const Eigen::MatrixXd& basis, double scale) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::VectorXd a(basis.cols()), b(basis.cols());
    for (Eigen::Index i = 0; i < basis.cols(); ++i) {
        a[i] = n(rng);
        b[i] = n(rng);
    }
    Eigen::Vector4d g = basis * a;
    g.normalize();
    Eigen::Vector4d p = basis * b;
    p -= p.dot(g) * g;
    p *= scale;
    return {Quaternion::from_vector(g), Quaternion::from_vector(p)};
}

template <class Draw>
PhaseState draw_until_separated(double min_sin_theta, Draw draw) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        PhaseState s = draw();
        const double r = s.separation_cosine();
        if (std::sqrt(std::max(0.0, 1.0 - r * r)) >= min_sin_theta) return s;
    }
    throw std::runtime_error("random state: could not satisfy the separation constraint");
}

}  // namespace

Quaternion random_unit_quaternion(Rng& rng) {
    Eigen::Vector4d v = gaussian4(rng);
    return Quaternion::from_vector(v.normalized());
}

Quaternion random_tangent(Rng& rng, const Quaternion& g, double scale) {
    Eigen::Vector4d v = gaussian4(rng);
    const Eigen::Vector4d gv = g.to_vector();
    v -= v.dot(gv) * gv;
    return Quaternion::from_vector(scale * v);
}

PhaseState random_phase_state(Rng& rng, double momentum_scale, double min_sin_theta) {
    return draw_until_separated(min_sin_theta, [&] {
        PhaseState s;
        s.g1 = random_unit_quaternion(rng);
        s.g2 = random_unit_quaternion(rng);
        s.p1 = random_tangent(rng, s.g1, momentum_scale);
        s.p2 = random_tangent(rng, s.g2, momentum_scale);
        return s;
    });
}

namespace {
PhaseState draw_in_subspace(Rng& rng, const Eigen::MatrixXd& basis, double scale) {
    PhaseState s;
    std::tie(s.g1, s.p1) = draw_in_span(rng, basis, scale);
    std::tie(s.g2, s.p2) = draw_in_span(rng, basis, scale);
    return s;
}
}  // namespace

PhaseState random_cospherical_state(Rng& rng, double momentum_scale, double min_sin_theta) {
    return draw_until_separated(min_sin_theta,
                                [&] { return draw_in_subspace(rng, random_subspace(rng, 3), momentum_scale); });
}

PhaseState random_imaginary_state(Rng& rng, double momentum_scale, double min_sin_theta) {
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(4, 3);
    basis(1, 0) = basis(2, 1) = basis(3, 2) = 1.0;
    return draw_until_separated(min_sin_theta, [&] {
        PhaseState s = draw_in_subspace(rng, basis, momentum_scale);
        s.g1.w = s.p1.w = s.g2.w = s.p2.w = 0.0;
        return s;
    });
}

PhaseState random_cocircular_state(Rng& rng, double momentum_scale, double min_sin_theta) {
    return draw_until_separated(min_sin_theta,
                                [&] { return draw_in_subspace(rng, random_subspace(rng, 2), momentum_scale); });
}

}  // namespace s3tb
