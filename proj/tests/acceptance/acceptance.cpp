// Acceptance run: one line per criterion, nonzero exit if any fails.

#include "oracles.hpp"
#include "random.hpp"

#include "s3tb/energy_casimir.hpp"
#include "s3tb/poisson.hpp"

#include <Eigen/SVD>

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace s3tb;

namespace {

namespace tol {
constexpr double drift = 1e-7;
constexpr double conservation_seconds = 10.0;
constexpr double c2_identity = 1e-10;
constexpr double c2_identity_seconds = 1.0;
constexpr double commuting_square = 1e-6;
constexpr double fixed_point = 1e-10;
constexpr double double_solve = 1e-12;
constexpr double spectrum = 1e-8;
constexpr double zero_eig = 1e-8;
constexpr double imaginary = 1e-8;
constexpr double fold_c0 = 1e-8;
constexpr double fold_det = 1e-6;
constexpr double lagrange_flows = 1e-8;
constexpr double i_drift = 1e-8;
constexpr double slice = 1e-12;
constexpr double stratum_casimir = drift;
constexpr double bracket = 1e-10;
constexpr double jacobi = 1e-6;
}  // namespace tol

struct Outcome {
    bool pass{true};
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

template <std::size_t N>
double sup_diff(const StateVec<N>& a, const StateVec<N>& b) {
    double m = 0;
    for (std::size_t i = 0; i < N; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

const Potential grav = Potential::gravitational();

// 1 ------------------------------------------------------------------------------

Outcome conservation() {
    const auto t0 = Clock::now();
    const MassParams m{1.3, 0.8};
    FlowConfig cfg;
    cfg.rel_tol = 1e-10;
    cfg.abs_tol = 1e-10;
    Outcome o;
    int failures = 0;
    std::string parts;
    for (const Potential& pot : {grav, Potential::linear(1.0)}) {
        Rng rng(pot.kind() == PotentialKind::gravitational ? 101 : 102);
        const HamiltonianKind kind = HamiltonianKind::two_body(m, pot);
        double worst = 0.0;
        int over = 0;
        double closest = 1.0;
        for (int n = 0; n < 20; ++n) {
            const PhaseState s0 = random_phase_state(rng, 1.0, 0.2);
            try {
                const auto left = integrate_reduced(left_reduce(s0), m, pot, 100.0, cfg);
                const auto inv = integrate_invariant(invariants_of(s0), m, pot, 100.0, cfg);
                const double d = std::max(drift(left, Side::left, m, pot).max(), drift(inv, kind).max());
                worst = std::max(worst, d);
                if (d >= tol::drift) {
                    ++over;
                    for (const auto& x : inv.x) closest = std::min(closest, 1.0 - std::abs(x[6]));
                }
            } catch (const std::exception&) {
                ++failures;
            }
        }
        if (over > 0) o.pass = false;
        parts += pot.describe() + ": max rel drift " + fmt("%.2e", worst) + ", " + std::to_string(over) + "/20 states >= 1e-7";
        if (over > 0) parts += " (closest sampled approach 1-|r| = " + fmt("%.1e", closest) + ")";
        parts += "; ";
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && failures == 0 && secs < tol::conservation_seconds;
    o.detail = parts + std::to_string(failures) + " integration failures, " + fmt("%.2f", secs) + " s (< 10 s)";
    return o;
}

// 2 ------------------------------------------------------------------------------

Outcome c2_identity() {
    Rng rng(201);
    std::vector<ReducedState> pts;
    pts.reserve(10000);
    for (int n = 0; n < 10000; ++n) pts.push_back(testutil::random_reduced(rng, n % 2 == 0));
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (const auto& rs : pts) {
        const Quaternion lhs = oracle::product(Quaternion(rs.A1), rs.gD) + oracle::product(rs.gD, Quaternion(rs.A2));
        const double direct = lhs.norm2();
        worst = std::max(worst, std::abs(casimir_C2(hilbert_map(rs)) - direct) / (1.0 + direct));
    }
    const double secs = seconds_since(t0);
    Outcome o;
    o.pass = worst < tol::c2_identity && secs < tol::c2_identity_seconds;
    o.detail = "10000 points (half with non-unit gL), max rel error " + fmt("%.2e", worst) + " (< 1e-10), " +
               fmt("%.3f", secs) + " s (< 1 s)";
    return o;
}

// 3 ------------------------------------------------------------------------------

Outcome commuting_square() {
    const MassParams m{1.2, 0.9};
    Rng rng(301);
    double worst = 0.0;
    int within = 0;
    std::string failures;
    for (int n = 0; n < 10; ++n) {
        const PhaseState s0 = random_phase_state(rng, 0.7, 0.4);
        const auto full = integrate_full(s0, m, grav, 10.0);
        const auto inv = integrate_invariant(invariants_of(s0), m, grav, 10.0);
        const double d = sup_diff(invariants_of(unpack_full(full.back())).to_array(), inv.back());
        worst = std::max(worst, d);
        if (d < tol::commuting_square) {
            ++within;
            continue;
        }
        double closest = 1.0;
        for (const auto& x : inv.x) closest = std::min(closest, 1.0 - std::abs(x[6]));
        failures += "; state " + std::to_string(n) + ": " + fmt("%.2e", d) + " with 1-|r| down to " + fmt("%.1e", closest);
    }
    return {within == 10, std::to_string(within) + "/10 states to T=10 within 1e-6 of |hilbert(full) - invariant|, max " +
                              fmt("%.2e", worst) + failures};
}

// 4, 5 ---------------------------------------------------------------------------

struct GridRE {
    RelativeEquilibrium re;
    bool lagrange{false};
    double alpha{0};
    double gamma{0};
};

std::vector<GridRE> re_grid() {
    std::vector<GridRE> out;
    const std::array<MassParams, 3> masses{MassParams{1, 1}, MassParams{3, 2}, MassParams{0.5, 4}};
    const std::array<Potential, 3> pots{grav, Potential::linear(1.0), Potential::linear(-0.7)};
    for (const auto& m : masses) {
        for (const auto& pot : pots) {
            for (int i = 1; i < 12; ++i) {
                if (i == 6) continue;
                for (double eta : {0.3, 1.0, 2.5}) out.push_back({make_re(oracle::pi * i / 12.0, eta, m, pot)});
            }
            if (m.equal()) {
                // phi1 takes the sign of the force; +-pi/4 is the isosceles member
                const double sign = pot.force(0.0, m) > 0.0 ? 1.0 : -1.0;
                for (double phi1 : {0.2, 0.5, 1.1}) {
                    for (double eta : {0.6, 1.5}) out.push_back({make_right_angled(sign * phi1, eta, m, pot)});
                }
            }
            if (pot.kind() == PotentialKind::linear) {
                for (bool antipodal : {false, true}) {
                    for (double xi : {0.4, 2.0}) {
                        for (double eta : {0.7, 1.9}) out.push_back({make_singular(antipodal, xi, eta, m, pot)});
                    }
                }
            }
        }
    }
    for (double alpha : {0.5, 1.0, 2.0}) {
        for (double gamma : {0.5, 1.0}) {
            const MassParams m = MassParams::lagrange(alpha);
            const Potential lin = Potential::linear(gamma);
            for (int i = 1; i < 12; ++i) {
                if (i == 6) continue;
                for (double eta : {0.3, 1.0, 2.0}) out.push_back({make_re(oracle::pi * i / 12.0, eta, m, lin), true, alpha, gamma});
            }
            for (double phi1 : {-0.2, -0.5, -1.1}) out.push_back({make_right_angled(phi1, 1.0, m, lin), true, alpha, gamma});
        }
    }
    return out;
}

Outcome fixed_points(const std::vector<GridRE>& grid) {
    double worst = 0.0;
    double worst_lin = 0.0;
    std::array<int, 5> kinds{};
    int linear_solves = 0;
    for (const auto& g : grid) {
        const auto& re = g.re;
        ++kinds[static_cast<int>(re.kind)];
        worst = std::max(worst, verify_re_fixed_point(re));
        if (re.kind == REKind::acute || re.kind == REKind::obtuse) {
            const auto lin = oracle::re_linear_solve(re.theta, re.eta_mag, re.y, re.masses.m1, re.masses.m2);
            worst_lin = std::max({worst_lin, std::abs(lin[0] - re.x1) / (1.0 + std::abs(re.x1)),
                                  std::abs(lin[1] - re.x2) / (1.0 + std::abs(re.x2))});
            ++linear_solves;
        }
    }
    bool all_kinds = true;
    for (int k : kinds) all_kinds = all_kinds && k > 0;
    Outcome o;
    o.pass = grid.size() >= 200 && all_kinds && worst < tol::fixed_point && worst_lin < tol::double_solve;
    o.detail = std::to_string(grid.size()) + " REs (singular0 " + std::to_string(kinds[0]) + ", singularPi " +
               std::to_string(kinds[1]) + ", acute " + std::to_string(kinds[2]) + ", right-angled " +
               std::to_string(kinds[3]) + ", obtuse " + std::to_string(kinds[4]) + "), max residual " +
               fmt("%.2e", worst) + " (< 1e-10), double solve on " + std::to_string(linear_solves) + " max " +
               fmt("%.2e", worst_lin) + " (< 1e-12)";
    return o;
}

// 8 - rank(J^3) by SVD, singular values relative to the largest. Equals the algebraic multiplicity
// of 0 when no Jordan block for 0 exceeds size 3.
int fitting_zero_multiplicity(const Matrix8& J) {
    Eigen::JacobiSVD<Matrix8> svd(J * J * J);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < 8; ++i) rank += sv[i] > 1e-10 * sv[0] ? 1 : 0;
    return 8 - rank;
}

Outcome spectra(const std::vector<GridRE>& grid) {
    double worst = 0.0;
    int compared = 0;
    int bad_zero = 0;
    int degenerate = 0;
    int degenerate_mismatch = 0;
    int singular_skipped = 0;
    for (const auto& g : grid) {
        const auto& re = g.re;
        const LinearizationReport rep = linearize(re);
        const int mult = fitting_zero_multiplicity(rep.matrix);
        if (mult > 4) {
            ++degenerate;
            bool hyperbolic = false;
            for (std::size_t i = static_cast<std::size_t>(mult); i < rep.eigenvalues.size(); ++i)
                hyperbolic = hyperbolic || std::abs(rep.eigenvalues[i].real()) > tol::imaginary;
            const StabilityClass expect = hyperbolic ? StabilityClass::linearly_unstable : StabilityClass::degenerate;
            if (rep.zero_count != mult || rep.classification != expect) ++degenerate_mismatch;
        } else {
            int zeros = 0;
            for (const auto& z : rep.eigenvalues) zeros += std::abs(z) < tol::zero_eig ? 1 : 0;
            if (zeros != 4 || mult != 4) ++bad_zero;
        }
        if (re.singular()) {
            ++singular_skipped;
            continue;
        }
        std::vector<std::complex<double>> expect;
        if (g.lagrange) {
            expect = charpoly_lagrange(re, g.alpha, g.gamma).roots;
        } else if (re.potential.kind() == PotentialKind::gravitational) {
            const ClosedFormPairs cf = closed_form_eigs_2body(re);
            expect = {cf.z, -cf.z, cf.w, -cf.w};
        } else {
            continue;
        }
        worst = std::max(worst, multiset_distance(nonzero_eigenvalues(rep), expect));
        ++compared;
    }
    Outcome o;
    o.pass = worst < tol::spectrum && bad_zero == 0 && degenerate_mismatch == 0 && compared > 0;
    o.detail = std::to_string(compared) + " closed-form comparisons, max distance " + fmt("%.2e", worst) +
               " (< 1e-8); exactly 4 eigenvalues below 1e-8 fails on " + std::to_string(bad_zero) + " of " +
               std::to_string(grid.size() - degenerate) + "; " + std::to_string(degenerate) +
               " with a higher zero multiplicity (8 - rank J^3) excluded, " + std::to_string(degenerate_mismatch) +
               " of them misreported; " + std::to_string(singular_skipped) + " singular REs have no closed form";
    return o;
}

// 6 ------------------------------------------------------------------------------

Outcome stability_theorems() {
    int checked = 0;
    int wrong = 0;
    std::string first;
    auto expect = [&](bool ok, const std::string& what) {
        ++checked;
        if (!ok) {
            ++wrong;
            if (first.empty()) first = what;
        }
    };
    for (const MassParams& m : {MassParams{1, 1}, MassParams{3, 2}, MassParams{0.5, 4}, MassParams{2, 2}}) {
        for (int i = 1; i < 24; ++i) {
            const double th = oracle::pi * i / 24.0;
            if (i == 12) continue;
            for (double eta : {0.2, 0.7, 1.5, 3.0}) {
                const RelativeEquilibrium re = make_re(th, eta, m, grav);
                const StabilityClass c = linearize(re).classification;
                if (th < oracle::pi / 2) {
                    expect(c == StabilityClass::linearly_stable, "acute grav " + fmt("%.3f", th));
                } else if (m.equal()) {
                    expect(c == StabilityClass::linearly_unstable, "obtuse equal-mass grav " + fmt("%.3f", th));
                }
            }
        }
    }
    for (double alpha : {0.5, 1.0, 2.0}) {
        for (double gamma : {0.5, 1.0, 2.0}) {
            const MassParams m = MassParams::lagrange(alpha);
            const Potential lin = Potential::linear(gamma);
            for (int i = 1; i < 24; ++i) {
                const double th = oracle::pi * i / 24.0;
                if (i == 12) continue;
                for (double eta : {0.2, 0.7, 1.5, 3.0}) {
                    const LinearizationReport rep = linearize(make_re(th, eta, m, lin));
                    if (th < oracle::pi / 2) {
                        expect(rep.classification == StabilityClass::linearly_unstable,
                               "Lagrange acute " + fmt("%.3f", th));
                    } else {
                        double re_max = 0.0;
                        for (const auto& z : rep.eigenvalues) re_max = std::max(re_max, std::abs(z.real()));
                        expect(re_max < tol::imaginary, "Lagrange obtuse " + fmt("%.3f", th));
                    }
                }
            }
        }
    }
    Outcome o;
    o.pass = wrong == 0;
    o.detail = std::to_string(checked) + " REs, misclassified " + std::to_string(wrong) + (first.empty() ? "" : " (first: " + first + ")");
    return o;
}

// 7 ------------------------------------------------------------------------------

Outcome fold() {
    const MassParams m{3, 2};
    int found = 0;
    int bad = 0;
    double c0 = 0.0;
    double det = 0.0;
    for (int i = 0; i <= 10; ++i) {
        const double th = 1.70 + 0.01 * i;
        const auto f = fold_locus(th, m);
        if (!f) {
            ++bad;
            continue;
        }
        ++found;
        c0 = std::max(c0, std::abs(f->c0_at_fold));
        det = std::max(det, std::abs(f->jacobian_det));
        if (!(f->w2_below * f->w2_above < 0.0)) ++bad;
    }
    int equal_folds = 0;
    for (const MassParams& eq : {MassParams{1, 1}, MassParams{2, 2}}) {
        for (int i = 1; i < 40; ++i) {
            if (fold_locus(oracle::pi / 2 + oracle::pi / 2 * i / 40.0, eq)) ++equal_folds;
        }
    }
    Outcome o;
    o.pass = bad == 0 && found == 11 && c0 < tol::fold_c0 && det < tol::fold_det && equal_folds == 0;
    o.detail = "m=(3,2), theta in [1.70, 1.80]: " + std::to_string(found) + "/11 folds, max |c0| " + fmt("%.2e", c0) +
               " (< 1e-8), max |det| " + fmt("%.2e", det) + " (< 1e-6), w-pair flips missing " +
               std::to_string(bad) + "; equal masses: " + std::to_string(equal_folds) + " folds on 78 obtuse angles";
    return o;
}

// 8 ------------------------------------------------------------------------------

Outcome lagrange_equivalence() {
    Rng rng(801);
    double flows = 0.0;
    double idrift = 0.0;
    for (double alpha : {0.7, 1.6}) {
        for (double gamma : {0.5, 1.2}) {
            for (int n = 0; n < 5; ++n) {
                const InvariantPoint p0 = testutil::random_invariant_point(rng);
                const auto a = integrate_invariant(p0, MassParams::lagrange(alpha), Potential::linear(gamma), 100.0);
                const auto b = integrate_invariant(p0, HamiltonianKind::lagrange_altered(alpha, gamma), 100.0);
                flows = std::max(flows, sup_diff(a.back(), b.back()));
                const double I0 = integral_I(p0, alpha, gamma);
                for (const auto& x : b.x) {
                    idrift = std::max(idrift, std::abs(integral_I(InvariantPoint::from_array(x), alpha, gamma) - I0) /
                                                  std::max(1.0, std::abs(I0)));
                }
            }
        }
    }
    Outcome o;
    o.pass = flows < tol::lagrange_flows && idrift < tol::i_drift;
    o.detail = "20 runs to T=100, max |two_body - lagrange_altered| " + fmt("%.2e", flows) + " (< 1e-8), I drift " +
               fmt("%.2e", idrift) + " (< 1e-8)";
    return o;
}

// 9 ------------------------------------------------------------------------------

Outcome cospherical_slice() {
    Rng rng(901);
    const MassParams m{1.1, 0.7};
    double slice = 0.0;
    double casimir_gap = 0.0;
    int label_changes = 0;
    int not_cospherical = 0;
    for (int n = 0; n < 100; ++n) {
        const PhaseState s = random_imaginary_state(rng, 1.0, 0.2);
        if (classify_point(s) == PointClass::generic) ++not_cospherical;
        const SliceCheck c = sjamaar_slice_check(s);
        slice = std::max({slice, (c.lambda + c.rho).norm(), (2.0 * c.omega - (c.lambda - c.rho)).norm()});
        const Potential pot = Potential::linear(n % 2 == 0 ? 1.0 : -0.7);
        const InvariantPoint p0 = invariants_of(s);
        const Stratum label = stratum_classify(p0);
        const auto tr = integrate_invariant(p0, m, pot, 10.0);
        for (const auto& x : tr.x) {
            const InvariantPoint p = InvariantPoint::from_array(x);
            // |lambda|^2 = C2 and |rho|^2 = C3 on the unit variety
            casimir_gap = std::max(casimir_gap, std::abs(casimir_C2(p) - casimir_C3(p)) / (1.0 + casimir_C3(p)));
            if (stratum_classify(p) != label) ++label_changes;
        }
    }
    Outcome o;
    o.pass = slice < tol::slice && casimir_gap < tol::stratum_casimir && label_changes == 0 && not_cospherical == 0;
    o.detail = "100 states: slice residual " + fmt("%.2e", slice) + " (< 1e-12), non-cospherical " +
               std::to_string(not_cospherical) + "; along T=10 flows max ||lambda|^2-|rho|^2| " + fmt("%.2e", casimir_gap) +
               " (< 1e-7), stratum label changes " + std::to_string(label_changes);
    return o;
}

// 10 -----------------------------------------------------------------------------

Outcome brackets() {
    Rng rng(1001);
    const MassParams m{1.5, 0.5};
    double anti = 0.0;
    double hc = 0.0;
    double flow = 0.0;
    for (int n = 0; n < 200; ++n) {
        const InvariantPoint p = testutil::random_invariant_point(rng);
        const auto S = structure_matrix(p);
        anti = std::max(anti, (S + S.transpose()).cwiseAbs().maxCoeff());
        for (const Potential& pot : {grav, Potential::linear(0.8)}) {
            const HamiltonianKind kind = HamiltonianKind::two_body(m, pot);
            const auto H = hamiltonian_gradient(kind, p);
            for (int c = 1; c <= 3; ++c) hc = std::max(hc, std::abs(invariant_bracket(H, casimir_gradient(c, p), p)));
            const auto a = table_flow(H, p);
            const auto b = rhs_full_reduced(p, m, pot);
            for (int i = 0; i < 8; ++i) flow = std::max(flow, std::abs(a[i] - b[i]) / (1.0 + std::abs(b[i])));
        }
    }
    std::uniform_int_distribution<int> pick(0, 7);
    const double h = 1e-5;
    double jac = 0.0;
    for (int n = 0; n < 50; ++n) {
        const InvariantPoint p = testutil::random_invariant_point(rng);
        const std::size_t a = pick(rng);
        const std::size_t b = pick(rng);
        const std::size_t c = pick(rng);
        auto outer = [&](std::size_t x, std::size_t y, std::size_t z) {
            double s = 0.0;
            for (std::size_t d = 0; d < 8; ++d) {
                auto xp = p.to_array();
                auto xm = p.to_array();
                xp[d] += h;
                xm[d] -= h;
                const double dB = (table_bracket(x, y, InvariantPoint::from_array(xp)) -
                                   table_bracket(x, y, InvariantPoint::from_array(xm))) / (2 * h);
                s += dB * table_bracket(d, z, p);
            }
            return s;
        };
        jac = std::max(jac, std::abs(outer(a, b, c) + outer(b, c, a) + outer(c, a, b)));
    }
    Outcome o;
    o.pass = anti == 0.0 && hc < tol::bracket && flow < tol::bracket && jac < tol::jacobi;
    o.detail = "antisymmetry " + fmt("%.1e", anti) + " (exact), max |{H,C}| " + fmt("%.2e", hc) + " (< 1e-10), table flow vs rhs " +
               fmt("%.2e", flow) + " (< 1e-10), Jacobi on 50 triples " + fmt("%.2e", jac) + " (< 1e-6)";
    return o;
}

}  // namespace

// --allow-fail 1,3: those criteria may fail without a nonzero exit; their lines still read FAIL.
int main(int argc, char** argv) {
    std::set<std::size_t> allowed;
    for (int a = 1; a < argc; ++a) {
        if (std::string(argv[a]) != "--allow-fail" || a + 1 >= argc) {
            std::fprintf(stderr, "usage: acceptance [--allow-fail i,j,...]\n");
            return 2;
        }
        std::stringstream list(argv[++a]);
        for (std::string item; std::getline(list, item, ',');) allowed.insert(std::stoul(item));
    }
    std::vector<GridRE> grid;
    auto guarded = [](const std::function<Outcome()>& f) {
        try {
            return f();
        } catch (const std::exception& e) {
            return Outcome{false, std::string("exception: ") + e.what()};
        }
    };
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"conservation", conservation},
        {"c2-identity", c2_identity},
        {"commuting-square", commuting_square},
        {"re-fixed-points", [&] {
             grid = re_grid();
             return fixed_points(grid);
         }},
        {"spectra", [&] { return spectra(grid); }},
        {"stability-predicates", stability_theorems},
        {"fold", fold},
        {"lagrange-equivalence", lagrange_equivalence},
        {"cospherical-slice", cospherical_slice},
        {"brackets", brackets},
    };
    int failed = 0;
    int blocking = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        const Outcome o = guarded(criteria[i].second);
        failed += o.pass ? 0 : 1;
        blocking += o.pass || allowed.contains(i + 1) ? 0 : 1;
        std::printf("%s %2zu %-22s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return blocking == 0 ? 0 : 1;
}
