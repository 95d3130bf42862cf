#include "s3tb/dynamics.hpp"

#include "s3tb/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace s3tb {

const char* to_string(HamiltonianTag t) {
    switch (t) {
        case HamiltonianTag::two_body: return "two_body";
        case HamiltonianTag::lagrange: return "lagrange";
        case HamiltonianTag::lagrange_altered: return "lagrange_altered";
    }
    return "unknown";
}

HamiltonianKind HamiltonianKind::two_body(const MassParams& m, const Potential& pot) {
    HamiltonianKind k;
    k.tag = HamiltonianTag::two_body;
    k.masses = m;
    k.potential = pot;
    return k;
}

namespace {
HamiltonianKind lagrange_kind(HamiltonianTag tag, double alpha, double gamma) {
    if (!(alpha > 0.0) || alpha > 2.0) {
        throw std::invalid_argument("lagrange hamiltonian: alpha must lie in (0, 2]");
    }
    if (!std::isfinite(gamma)) throw std::invalid_argument("lagrange hamiltonian: gamma must be finite");
    HamiltonianKind k;
    k.tag = tag;
    k.alpha = alpha;
    k.gamma = gamma;
    k.masses = MassParams::lagrange(alpha);
    k.potential = gamma == 0.0 ? Potential::custom([](double) { return 0.0; }, [](double) { return 0.0; },
                                                   [](double) { return 0.0; })
                               : Potential::linear(gamma);
    return k;
}
}  // namespace

HamiltonianKind HamiltonianKind::lagrange(double alpha, double gamma) {
    return lagrange_kind(HamiltonianTag::lagrange, alpha, gamma);
}

HamiltonianKind HamiltonianKind::lagrange_altered(double alpha, double gamma) {
    return lagrange_kind(HamiltonianTag::lagrange_altered, alpha, gamma);
}

MassParams HamiltonianKind::effective_masses() const { return masses; }

Potential HamiltonianKind::effective_potential() const { return potential; }

ReducedVec pack(const ReducedState& rs) {
    return {rs.A1.x, rs.A1.y, rs.A1.z, rs.A2.x, rs.A2.y, rs.A2.z, rs.gD.w, rs.gD.x, rs.gD.y, rs.gD.z};
}

ReducedState unpack_reduced(const ReducedVec& v, Side side) {
    return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8], v[9]}, side};
}

FullVec pack(const PhaseState& s) {
    return {s.g1.w, s.g1.x, s.g1.y, s.g1.z, s.p1.w, s.p1.x, s.p1.y, s.p1.z,
            s.g2.w, s.g2.x, s.g2.y, s.g2.z, s.p2.w, s.p2.x, s.p2.y, s.p2.z};
}

PhaseState unpack_full(const FullVec& v) {
    return {{v[0], v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}, {v[8], v[9], v[10], v[11]},
            {v[12], v[13], v[14], v[15]}};
}

ReducedTangent rhs_left(const ReducedState& rs, const MassParams& m, const Potential& pot) {
    if (rs.side != Side::left) throw std::invalid_argument("rhs_left: state is right-reduced");
    const double f = pot.force(rs.gD.w, m);
    const ImaginaryQuaternion gbar = rs.gD.imag();
    const Quaternion dg = -(Quaternion{rs.A1} * rs.gD) / m.m1 + rs.gD * Quaternion{rs.A2} / m.m2;
    return {f * gbar, -f * gbar, dg};
}

ReducedTangent rhs_right(const ReducedState& rs, const MassParams& m, const Potential& pot) {
    if (rs.side != Side::right) throw std::invalid_argument("rhs_right: state is left-reduced");
    const double f = pot.force(rs.gD.w, m);
    const ImaginaryQuaternion gbar = rs.gD.imag();
    const Quaternion dg = Quaternion{rs.A1} * rs.gD / m.m1 - rs.gD * Quaternion{rs.A2} / m.m2;
    return {-f * gbar, f * gbar, dg};
}

ReducedTangent rhs_reduced(const ReducedState& rs, const MassParams& m, const Potential& pot) {
    return rs.side == Side::left ? rhs_left(rs, m, pot) : rhs_right(rs, m, pot);
}

InvariantVec rhs_full_reduced(const InvariantPoint& p, const MassParams& m, const Potential& pot) {
    const double f = pot.force(p.r, m);
    const double m1 = m.m1;
    const double m2 = m.m2;
    InvariantVec d;
    d[0] = 2.0 * f * p.k13;
    d[1] = f * (p.k23 - p.k13);
    d[2] = f * p.k33 - p.r * (p.k11 / m1 - p.k12 / m2) - p.delta / m2;
    d[3] = -2.0 * f * p.k23;
    d[4] = -f * p.k33 - p.r * (p.k12 / m1 - p.k22 / m2) + p.delta / m1;
    d[5] = 2.0 * p.r * (p.k23 / m2 - p.k13 / m1);
    d[6] = p.k13 / m1 - p.k23 / m2;
    d[7] = (p.k12 * p.k13 - p.k11 * p.k23) / m1 + (p.k13 * p.k22 - p.k12 * p.k23) / m2;
    return d;
}

Quaternion reconstruct_rhs(const Quaternion& g1, const ImaginaryQuaternion& R1, double m1) {
    return g1 * Quaternion{R1} / m1;
}

FullVec rhs_full_space(const PhaseState& s, const MassParams& m, const Potential& pot) {
    const Quaternion g1i = s.g1.inverse();
    const Quaternion g2i = s.g2.inverse();
    const ReducedState rs{(g1i * s.p1).imag(), (g2i * s.p2).imag(), g1i * s.g2, Side::left};
    const ReducedTangent d = rhs_left(rs, m, pot);
    const Quaternion dg1 = reconstruct_rhs(s.g1, rs.A1, m.m1);
    const Quaternion dg2 = reconstruct_rhs(s.g2, rs.A2, m.m2);
    const Quaternion dp1 = dg1 * Quaternion{rs.A1} + s.g1 * Quaternion{d.dA1};
    const Quaternion dp2 = dg2 * Quaternion{rs.A2} + s.g2 * Quaternion{d.dA2};
    return pack(PhaseState{dg1, dp1, dg2, dp2});
}

double evaluate_reduced_hamiltonian(const HamiltonianKind& kind, const ReducedState& rs) {
    const double a11 = rs.A1.norm2();
    const double a22 = rs.A2.norm2();
    const double r = rs.gD.w;
    switch (kind.tag) {
        case HamiltonianTag::two_body:
            return a11 / (2.0 * kind.masses.m1) + a22 / (2.0 * kind.masses.m2) + kind.potential.value(r, kind.masses);
        case HamiltonianTag::lagrange:
            return 0.25 * (1.0 + kind.alpha) * (a11 + a22) + 0.5 * (1.0 - kind.alpha) * dot(rs.A1, rs.A2) +
                   kind.gamma * r;
        case HamiltonianTag::lagrange_altered: return 0.5 * kind.alpha * (a11 + a22) + kind.gamma * r;
    }
    return 0.0;
}

double evaluate_reduced_hamiltonian(const HamiltonianKind& kind, const InvariantPoint& p) {
    switch (kind.tag) {
        case HamiltonianTag::two_body:
            return p.k11 / (2.0 * kind.masses.m1) + p.k22 / (2.0 * kind.masses.m2) +
                   kind.potential.value(p.r, kind.masses);
        case HamiltonianTag::lagrange:
            return 0.25 * (1.0 + kind.alpha) * (p.k11 + p.k22) + 0.5 * (1.0 - kind.alpha) * p.k12 + kind.gamma * p.r;
        case HamiltonianTag::lagrange_altered: return 0.5 * kind.alpha * (p.k11 + p.k22) + kind.gamma * p.r;
    }
    return 0.0;
}

void project_full(FullVec& v) {
    for (std::size_t base : {std::size_t{0}, std::size_t{8}}) {
        double n2 = 0.0;
        for (std::size_t i = 0; i < 4; ++i) n2 += v[base + i] * v[base + i];
        const double n = std::sqrt(n2);
        double gp = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            v[base + i] /= n;
            gp += v[base + i] * v[base + 4 + i];
        }
        for (std::size_t i = 0; i < 4; ++i) v[base + 4 + i] -= gp * v[base + i];
    }
}

void project_reduced(ReducedVec& v) {
    const double n = std::sqrt(v[6] * v[6] + v[7] * v[7] + v[8] * v[8] + v[9] * v[9]);
    for (std::size_t i = 6; i < 10; ++i) v[i] /= n;
}

Trajectory<10> integrate_reduced(const ReducedState& rs0, const MassParams& m, const Potential& pot, double T,
                                 const FlowConfig& cfg) {
    const Side side = rs0.side;
    DormandPrince<10> dp(
        [&, side](double, const ReducedVec& v) {
            const ReducedTangent d = rhs_reduced(unpack_reduced(v, side), m, pot);
            return pack(ReducedState{d.dA1, d.dA2, d.dgD, side});
        },
        cfg, cfg.projection ? DormandPrince<10>::Projector(project_reduced) : DormandPrince<10>::Projector{});
    return dp.integrate(pack(rs0), 0.0, T);
}

Trajectory<16> integrate_full(const PhaseState& s0, const MassParams& m, const Potential& pot, double T,
                              const FlowConfig& cfg) {
    s0.validate();
    DormandPrince<16> dp([&](double, const FullVec& v) { return rhs_full_space(unpack_full(v), m, pot); }, cfg,
                         cfg.projection ? DormandPrince<16>::Projector(project_full) : DormandPrince<16>::Projector{});
    return dp.integrate(pack(s0), 0.0, T);
}

Trajectory<8> integrate_invariant(const InvariantPoint& p0, const MassParams& m, const Potential& pot, double T,
                                  const FlowConfig& cfg) {
    DormandPrince<8> dp(
        [&](double, const InvariantVec& v) { return rhs_full_reduced(InvariantPoint::from_array(v), m, pot); }, cfg);
    return dp.integrate(p0.to_array(), 0.0, T);
}

Trajectory<8> integrate_invariant(const InvariantPoint& p0, const HamiltonianKind& kind, double T,
                                  const FlowConfig& cfg) {
    DormandPrince<8> dp(
        [&](double, const InvariantVec& v) {
            const InvariantPoint p = InvariantPoint::from_array(v);
            return table_flow_unchecked(hamiltonian_gradient(kind, p), p);
        },
        cfg);
    return dp.integrate(p0.to_array(), 0.0, T);
}

InvariantSnapshot snapshot(const PhaseState& s, const MassParams& m, const Potential& pot) {
    const InvariantPoint p = invariants_of(s);
    return {hamiltonian_2body(s, m, pot), (s.g1.inverse() * s.g2).norm2(), momentum_left(s).norm2(),
            momentum_right(s).norm2(), p.syzygy_residual(), p.k11 * p.k22 * p.k33};
}

InvariantSnapshot snapshot(const ReducedState& rs, const MassParams& m, const Potential& pot) {
    const HamiltonianKind kind = HamiltonianKind::two_body(m, pot);
    const InvariantPoint p = hilbert_map(rs);
    return {evaluate_reduced_hamiltonian(kind, rs), rs.gD.norm2(), casimir_C2_direct(rs), (rs.A1 + rs.A2).norm2(),
            p.syzygy_residual(), p.k11 * p.k22 * p.k33};
}

InvariantSnapshot snapshot(const InvariantPoint& p, const HamiltonianKind& kind) {
    return {evaluate_reduced_hamiltonian(kind, p), casimir_C1(p), casimir_C2(p), casimir_C3(p), p.syzygy_residual(),
            p.k11 * p.k22 * p.k33};
}

double DriftReport::max() const { return std::max({H, C1, C2, C3, syzygy}); }

void DriftReport::accumulate(const InvariantSnapshot& a, const InvariantSnapshot& b) {
    auto rel = [](double q0, double q) { return std::abs(q - q0) / std::max(1.0, std::abs(q0)); };
    H = std::max(H, rel(a.H, b.H));
    C1 = std::max(C1, rel(a.C1, b.C1));
    C2 = std::max(C2, rel(a.C2, b.C2));
    C3 = std::max(C3, rel(a.C3, b.C3));
    syzygy = std::max(syzygy, std::abs(b.syzygy - a.syzygy) / std::max(1.0, a.syzygy_scale));
}

DriftReport drift(const Trajectory<16>& tr, const MassParams& m, const Potential& pot) {
    DriftReport d;
    const InvariantSnapshot first = snapshot(unpack_full(tr.x.front()), m, pot);
    for (const auto& x : tr.x) d.accumulate(first, snapshot(unpack_full(x), m, pot));
    return d;
}

DriftReport drift(const Trajectory<10>& tr, Side side, const MassParams& m, const Potential& pot) {
    DriftReport d;
    const InvariantSnapshot first = snapshot(unpack_reduced(tr.x.front(), side), m, pot);
    for (const auto& x : tr.x) d.accumulate(first, snapshot(unpack_reduced(x, side), m, pot));
    return d;
}

DriftReport drift(const Trajectory<8>& tr, const HamiltonianKind& kind) {
    DriftReport d;
    const InvariantSnapshot first = snapshot(InvariantPoint::from_array(tr.x.front()), kind);
    for (const auto& x : tr.x) d.accumulate(first, snapshot(InvariantPoint::from_array(x), kind));
    return d;
}

void write_trajectory_csv(std::ostream& os, const Trajectory<16>& tr, const MassParams& m, const Potential& pot) {
    os << "t,g1w,g1x,g1y,g1z,p1w,p1x,p1y,p1z,g2w,g2x,g2y,g2z,p2w,p2x,p2y,p2z,H,C1,C2,C3\n";
    const auto old = os.precision(17);
    for (std::size_t n = 0; n < tr.t.size(); ++n) {
        os << tr.t[n];
        for (double v : tr.x[n]) os << ',' << v;
        const InvariantSnapshot s = snapshot(unpack_full(tr.x[n]), m, pot);
        os << ',' << s.H << ',' << s.C1 << ',' << s.C2 << ',' << s.C3 << '\n';
    }
    os.precision(old);
}

void write_trajectory_csv(std::ostream& os, const Trajectory<8>& tr, const HamiltonianKind& kind) {
    os << "t," << invariant_csv_header() << ",H,C1,C2,C3\n";
    const auto old = os.precision(17);
    for (std::size_t n = 0; n < tr.t.size(); ++n) {
        const InvariantPoint p = InvariantPoint::from_array(tr.x[n]);
        os << tr.t[n] << ',' << invariant_csv_row(p);
        const InvariantSnapshot s = snapshot(p, kind);
        os << ',' << s.H << ',' << s.C1 << ',' << s.C2 << ',' << s.C3 << '\n';
    }
    os.precision(old);
}

}  // namespace s3tb
