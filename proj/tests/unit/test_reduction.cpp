#include "doctest.h"

#include "oracles.hpp"
#include "random.hpp"

#include "s3tb/reduction.hpp"

#include <sstream>

using namespace s3tb;

namespace {

const Quaternion one{1, 0, 0, 0};
const Quaternion qi{0, 1, 0, 0};
const Quaternion qj{0, 0, 1, 0};
const Quaternion qk{0, 0, 0, 1};

double dist(const ImaginaryQuaternion& a, const ImaginaryQuaternion& b) { return (a - b).norm(); }
double dist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

double max_diff(const InvariantPoint& a, const InvariantPoint& b) {
    const auto x = a.to_array();
    const auto y = b.to_array();
    double m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

/// C2 written out from the invariant generators.
double c2_formula(const InvariantPoint& p) {
    const double r2 = p.r * p.r;
    return (p.k33 + r2) * (p.k11 + p.k22) + 2 * p.k12 * (r2 - p.k33) + 4 * p.k13 * p.k23 - 4 * p.r * p.delta;
}

}  // namespace

TEST_CASE("left_reduce") {
    const ReducedState a = left_reduce({one, qi, one, qj});
    CHECK(dist(a.A1, {1, 0, 0}) == 0.0);
    CHECK(dist(a.A2, {0, 1, 0}) == 0.0);
    CHECK(dist(a.gD, one) == 0.0);
    CHECK(a.side == Side::left);

    const ReducedState b = left_reduce({one, qi, qj, qk});
    CHECK(dist(b.A1, {1, 0, 0}) < 1e-15);
    CHECK(dist(b.A2, {-1, 0, 0}) < 1e-15);
    CHECK(dist(b.gD, qj) < 1e-15);

    Rng rng(31);
    for (int n = 0; n < 200; ++n) {
        const PhaseState s = random_phase_state(rng);
        const Quaternion l = random_unit_quaternion(rng);
        const ReducedState x = left_reduce(s);
        const ReducedState y = left_reduce(act(l, one, s));
        CHECK(dist(x.A1, y.A1) < 1e-12);
        CHECK(dist(x.A2, y.A2) < 1e-12);
        CHECK(dist(x.gD, y.gD) < 1e-12);
        CHECK(dist(Quaternion(x.A1), oracle::product(oracle::unit_inverse(s.g1), s.p1)) < 1e-12);
    }
}

TEST_CASE("right_reduce") {
    const ReducedState a = right_reduce({one, qi, one, qj});
    CHECK(dist(a.A1, {1, 0, 0}) == 0.0);
    CHECK(dist(a.A2, {0, 1, 0}) == 0.0);
    CHECK(a.side == Side::right);

    const ReducedState b = right_reduce({one, qi, qj, qk});
    CHECK(dist(b.A1, {1, 0, 0}) < 1e-15);
    CHECK(dist(b.A2, {1, 0, 0}) < 1e-15);
    CHECK(dist(b.gD, -qj) < 1e-15);

    Rng rng(32);
    for (int n = 0; n < 200; ++n) {
        const PhaseState s = random_phase_state(rng);
        const Quaternion r = random_unit_quaternion(rng);
        const ReducedState x = right_reduce(s);
        const ReducedState y = right_reduce(act(one, r, s));
        CHECK(dist(x.A1, y.A1) < 1e-12);
        CHECK(dist(x.A2, y.A2) < 1e-12);
        CHECK(dist(x.gD, y.gD) < 1e-12);
    }
}

TEST_CASE("orbit_diffeo") {
    const OrbitCoordinates z = orbit_diffeo({{}, {}, one, Side::left});
    CHECK(z.X.norm() == 0.0);
    CHECK(z.Y.norm() == 0.0);
    CHECK(dist(z.g, one) == 0.0);

    const OrbitCoordinates a = orbit_diffeo({{1, 0, 0}, {0, 1, 0}, one, Side::left});
    CHECK(dist(a.X, {1, 1, 0}) < 1e-15);
    CHECK(dist(a.Y, {-1, 1, 0}) < 1e-15);

    CHECK_THROWS_AS((void)orbit_diffeo({{1, 0, 0}, {}, Quaternion{}, Side::left}), std::domain_error);

    Rng rng(33);
    for (int n = 0; n < 200; ++n) {
        const ReducedState rs = testutil::random_reduced(rng);
        const OrbitCoordinates oc = orbit_diffeo(rs);
        CHECK(oc.X.norm2() == doctest::Approx(casimirs(rs).C2).epsilon(1e-12));
        const ReducedState back = orbit_diffeo_inverse(oc);
        CHECK(dist(back.A1, rs.A1) < 1e-12);
        CHECK(dist(back.A2, rs.A2) < 1e-12);
        CHECK(dist(back.gD, rs.gD) < 1e-12);
    }
}

TEST_CASE("casimirs of reduced states") {
    const CasimirValues z = casimirs(ReducedState{{}, {}, one, Side::left});
    CHECK(z.C1 == 1.0);
    CHECK(z.C2 == 0.0);

    const ReducedState a{{1, 0, 0}, {0, 1, 0}, one, Side::left};
    CHECK(casimirs(a).C2 == doctest::Approx(2.0));
    CHECK(casimir_C2(hilbert_map(a)) == doctest::Approx(2.0));

    const ReducedState b{{1, 0, 0}, {-1, 0, 0}, qj, Side::left};
    CHECK(casimirs(b).C2 == doctest::Approx(4.0));
    CHECK(casimir_C2_direct(b) == doctest::Approx(4.0));
}

TEST_CASE("C2 identity on random reduced states, unit and non-unit gD") {
    Rng rng(34);
    for (int n = 0; n < 1000; ++n) {
        const ReducedState rs = testutil::random_reduced(rng, n % 2 == 0);
        const Quaternion lhs = oracle::product(Quaternion(rs.A1), rs.gD) + oracle::product(rs.gD, Quaternion(rs.A2));
        const double direct = lhs.norm2();
        CHECK(std::abs(casimir_C2_direct(rs) - direct) <= 1e-10 * (1.0 + direct));
        CHECK(std::abs(casimir_C2(hilbert_map(rs)) - direct) <= 1e-10 * (1.0 + direct));
        CHECK(std::abs(c2_formula(hilbert_map(rs)) - direct) <= 1e-10 * (1.0 + direct));
    }
}

TEST_CASE("hilbert_map") {
    const double s = 0.6;
    const double c = 0.8;
    const InvariantPoint p = hilbert_map({{1, 0, 0}, {0, 1, 0}, Quaternion{c, 0, 0, s}, Side::left});
    CHECK(p.k11 == doctest::Approx(1.0));
    CHECK(p.k22 == doctest::Approx(1.0));
    CHECK(p.k33 == doctest::Approx(s * s));
    CHECK(p.k12 == 0.0);
    CHECK(p.k13 == 0.0);
    CHECK(p.k23 == 0.0);
    CHECK(p.delta == doctest::Approx(s));
    CHECK(p.r == doctest::Approx(c));

    const InvariantPoint z = hilbert_map({{}, {}, one, Side::left});
    CHECK(max_diff(z, InvariantPoint{0, 0, 0, 0, 0, 0, 0, 1}) == 0.0);

    Rng rng(35);
    for (int n = 0; n < 1000; ++n) {
        const PhaseState st = random_phase_state(rng);
        const ReducedState rs = left_reduce(st);
        const InvariantPoint q = hilbert_map(rs);
        const auto o = oracle::invariants(st);
        CHECK(max_diff(q, InvariantPoint::from_array(o)) < 1e-12);
        CHECK(std::abs(q.syzygy_residual()) < 1e-10);
        CHECK(q.on_variety());

        // Invariance under simultaneous conjugation.
        const Quaternion u = random_unit_quaternion(rng);
        const Quaternion ui = oracle::unit_inverse(u);
        const ReducedState rc{oracle::product(oracle::product(u, Quaternion(rs.A1)), ui).imag(),
                              oracle::product(oracle::product(u, Quaternion(rs.A2)), ui).imag(),
                              oracle::product(oracle::product(u, rs.gD), ui), Side::left};
        CHECK(max_diff(hilbert_map(rc), q) < 1e-12);

        // Pipeline consistency with the momentum maps.
        CHECK(std::abs(casimirs(rs).C2 - momentum_left(st).norm2()) < 1e-10);
        CHECK(std::abs(casimir_C3(q) - momentum_right(st).norm2()) < 1e-10);
    }
}

TEST_CASE("casimir_C3") {
    CHECK(casimir_C3(InvariantPoint{}) == 0.0);
    InvariantPoint p;
    p.k11 = 1;
    p.k22 = 1;
    p.k12 = -1;
    CHECK(casimir_C3(p) == 0.0);
    CHECK(casimir_C3(invariants_of({one, qi, qj, qk})) == doctest::Approx(0.0));
    const CasimirValues all = casimirs(invariants_of({one, qi, qj, qk}));
    CHECK(all.C1 == doctest::Approx(1.0));
    CHECK(all.C2 == doctest::Approx(4.0));
}

TEST_CASE("stratum_classify") {
    CHECK(stratum_classify(InvariantPoint{0, 0, 0, 0, 0, 0, 0, 1}) == Stratum::full_isotropy);
    CHECK(stratum_classify(InvariantPoint{0, 0, 0, 0, 0, 0, 0, -1}) == Stratum::full_isotropy);
    const Quaternion e = Quaternion::exp_i(0.9);
    CHECK(stratum_classify(invariants_of({one, qi, e, qi * e})) == Stratum::so2_isotropy);
    CHECK(stratum_classify(invariants_of({one, qi, qj, qk})) == Stratum::free);

    Rng rng(36);
    for (int n = 0; n < 300; ++n) {
        const PhaseState c = random_cocircular_state(rng);
        CHECK(stratum_classify(invariants_of(c)) != Stratum::free);
        CHECK(stratum_classify(invariants_of(random_phase_state(rng))) == Stratum::free);
    }
}

TEST_CASE("degenerate_leaf_sample") {
    CHECK(degenerate_leaf_sample(0, 0, oracle::pi / 2) == 0.0);
    CHECK(degenerate_leaf_sample(2, 0, oracle::pi / 2) == doctest::Approx(1.0));
    CHECK(degenerate_leaf_sample(0, 1, oracle::pi / 2) == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)degenerate_leaf_sample(1, 0, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)degenerate_leaf_sample(-1, 0, 1.0), std::invalid_argument);
}

TEST_CASE("invariant csv") {
    CHECK(invariant_csv_header() == "k11,k12,k13,k22,k23,k33,delta,r");
    InvariantPoint p{1, 2, 3, 4, 5, 6, 7, 8};
    std::istringstream row(invariant_csv_row(p));
    std::vector<double> v;
    std::string cell;
    while (std::getline(row, cell, ',')) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 8);
    CHECK(v[6] == 7.0);
    CHECK(v[7] == 8.0);
    CHECK(p.to_array()[6] == 8.0);
    CHECK(InvariantPoint::from_array(p.to_array()).delta == 7.0);
}
