#include "s3tb/energy_casimir.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace s3tb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ECSample from_re(const RelativeEquilibrium& re, double tau) {
    ECSample s;
    s.theta = re.theta;
    s.tau = tau;
    s.phi1 = re.phi1;
    s.family = re.kind;
    s.isosceles = re.isosceles;
    s.xi = re.xi_mag;
    s.eta = re.eta_mag;
    s.H = hamiltonian_2body(re.state, re.masses, re.potential);
    s.lam2 = momentum_left(re.state).norm2();
    s.rho2 = momentum_right(re.state).norm2();
    s.stability = linearize(re).classification;
    return s;
}

ECSample failed(double theta, double tau, const std::string& why) {
    ECSample s;
    s.theta = theta;
    s.tau = tau;
    s.phi1 = s.H = s.lam2 = s.rho2 = s.xi = s.eta = kNaN;
    s.status = why.empty() ? "error" : why;
    return s;
}

double lerp(double lo, double hi, int i, int n) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }

}  // namespace

ECSample ec_sample(double theta, double tau, const MassParams& m, const Potential& pot) {
    return from_re(re_from_tau(theta, tau, m, pot), tau);
}

ECSample ec_sample_right_angled(double phi1, double tau, const MassParams& m, const Potential& pot) {
    return from_re(right_angled_from_tau(phi1, tau, m, pot), tau);
}

ECSample ec_sample_thread(bool antipodal, double eta, double tau, const MassParams& m, const Potential& pot) {
    if (!(eta > 0.0)) throw std::invalid_argument("ec_sample_thread: |eta| must be positive");
    return from_re(make_singular(antipodal, std::exp(tau) * eta, eta, m, pot), tau);
}

std::array<double, 3> recompute_sample(const ECSample& s, const MassParams& m, const Potential& pot) {
    RelativeEquilibrium re;
    re.kind = s.family;
    re.theta = s.theta;
    re.phi1 = s.phi1;
    re.phi2 = s.theta - s.phi1;
    re.xi_mag = s.xi;
    re.eta_mag = s.eta;
    re.masses = m;
    const PhaseState st = reconstruct_re(re);
    return {hamiltonian_2body(st, m, pot), momentum_left(st).norm2(), momentum_right(st).norm2()};
}

const char* to_string(ECFamily f) {
    switch (f) {
        case ECFamily::main: return "main";
        case ECFamily::right_angled: return "right-angled";
        case ECFamily::thread0: return "thread0";
        case ECFamily::threadpi: return "threadpi";
    }
    return "unknown";
}

ECFamily parse_ec_family(const std::string& s) {
    if (s == "isosceles" || s == "main" || s == "theta") return ECFamily::main;
    if (s == "right-angled" || s == "rightAngled" || s == "right_angled") return ECFamily::right_angled;
    if (s == "thread0") return ECFamily::thread0;
    if (s == "threadpi") return ECFamily::threadpi;
    throw std::invalid_argument("unknown family '" + s + "'");
}

ECGrid ECGrid::defaults(ECFamily family, bool attractive) {
    ECGrid g;
    g.family = family;
    switch (family) {
        case ECFamily::main:
            g.a_min = 0.05;
            g.a_max = kPi - 0.05;
            break;
        case ECFamily::right_angled:
            g.a_min = attractive ? 0.01 : -0.5 * kPi + 0.01;
            g.a_max = attractive ? 0.5 * kPi - 0.01 : -0.01;
            break;
        case ECFamily::thread0:
        case ECFamily::threadpi:
            g.a_min = 0.1;
            g.a_max = 3.0;
            break;
    }
    return g;
}

void ECGrid::validate() const {
    if (na < 1 || ntau < 1) throw std::invalid_argument("grid counts must be positive");
    for (double v : {a_min, a_max, tau_min, tau_max}) {
        if (!std::isfinite(v)) throw std::invalid_argument("grid bounds must be finite");
    }
    if (a_min > a_max || tau_min > tau_max) throw std::invalid_argument("grid bounds must be ordered");
}

unsigned worker_count() {
    if (const char* env = std::getenv("S3TB_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::vector<ECSample> ec_surface(const ECGrid& grid, const MassParams& m, const Potential& pot, unsigned threads) {
    grid.validate();
    const std::size_t total = static_cast<std::size_t>(grid.na) * static_cast<std::size_t>(grid.ntau);
    std::vector<ECSample> out(total);
    auto job = [&](std::size_t k) {
        const int i = static_cast<int>(k / static_cast<std::size_t>(grid.ntau));
        const int j = static_cast<int>(k % static_cast<std::size_t>(grid.ntau));
        const double a = lerp(grid.a_min, grid.a_max, i, grid.na);
        const double tau = lerp(grid.tau_min, grid.tau_max, j, grid.ntau);
        try {
            switch (grid.family) {
                case ECFamily::main: out[k] = ec_sample(a, tau, m, pot); break;
                case ECFamily::right_angled: out[k] = ec_sample_right_angled(a, tau, m, pot); break;
                case ECFamily::thread0: out[k] = ec_sample_thread(false, a, tau, m, pot); break;
                case ECFamily::threadpi: out[k] = ec_sample_thread(true, a, tau, m, pot); break;
            }
        } catch (const std::exception& e) {
            double theta = a;
            if (grid.family == ECFamily::right_angled) theta = 0.5 * kPi;
            if (grid.family == ECFamily::thread0) theta = 0.0;
            if (grid.family == ECFamily::threadpi) theta = kPi;
            out[k] = failed(theta, tau, e.what());
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads == 0 ? worker_count() : threads,
                                                       static_cast<unsigned>(total)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < total; k = next++) job(k);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

void write_ec_csv(std::ostream& os, const std::vector<ECSample>& samples) {
    os << "family,theta,tau,H,lam2,rho2,stability,phi1,xi,eta,isosceles,status\n";
    os << std::setprecision(17);
    for (const auto& s : samples) {
        std::string status = s.status;
        for (char& c : status) {
            if (c == ',' || c == '\n') c = ';';
        }
        os << (s.ok() ? to_string(s.family) : "none") << ',' << s.theta << ',' << s.tau << ',' << s.H << ','
           << s.lam2 << ',' << s.rho2 << ',' << (s.ok() ? to_string(s.stability) : "none") << ',' << s.phi1 << ','
           << s.xi << ',' << s.eta << ',' << (s.isosceles ? 1 : 0) << ',' << status << '\n';
    }
}

void write_plot_script(std::ostream& os, const std::string& csv_path) {
    os << "import sys\n"
          "import pandas as pd\n"
          "import matplotlib.pyplot as plt\n\n"
          "path = sys.argv[1] if len(sys.argv) > 1 else \""
       << csv_path
       << "\"\n"
          "df = pd.read_csv(path)\n"
          "df = df[df.status == \"ok\"]\n"
          "colors = {\"linearly_stable\": \"tab:blue\", \"linearly_unstable\": \"tab:red\", \"degenerate\": \"k\"}\n"
          "fig = plt.figure(figsize=(7, 6))\n"
          "ax = fig.add_subplot(projection=\"3d\")\n"
          "for label, part in df.groupby(\"stability\"):\n"
          "    ax.scatter(part.lam2, part.rho2, part.H, s=2, c=colors.get(label, \"gray\"), label=label)\n"
          "ax.set_xlabel(\"|lambda|^2\")\n"
          "ax.set_ylabel(\"|rho|^2\")\n"
          "ax.set_zlabel(\"H\")\n"
          "ax.legend()\n"
          "out = path.rsplit(\".\", 1)[0] + \".png\"\n"
          "fig.savefig(out, dpi=150)\n"
          "print(out)\n";
}

std::array<double, 2> pair_squares(const Matrix8& J) {
    const Matrix8 J2 = J * J;
    const double p1 = 0.5 * J2.trace();
    const double p2 = 0.5 * (J2 * J2).trace();
    const double e2 = 0.5 * (p1 * p1 - p2);
    const double disc = std::sqrt(std::max(0.0, p1 * p1 - 4.0 * e2));
    return {0.5 * (p1 + disc), 0.5 * (p1 - disc)};
}

std::optional<ThreadDetachment> detect_thread_detachment(double alpha, double gamma, double c_max) {
    if (!(c_max > 0.0)) throw std::invalid_argument("detect_thread_detachment: c_max must be positive");
    const HamiltonianKind kind = HamiltonianKind::lagrange(alpha, gamma);
    const MassParams m = kind.effective_masses();
    const Potential pot = kind.effective_potential();
    auto product = [&](double c) {
        const RelativeEquilibrium re = make_singular(false, 1.0 + c, 1.0, m, pot);
        return pair_squares(linearization_matrix(invariants_of(re.state), m, pot));
    };
    auto sign_of = [&](double c) {
        const auto s = product(c);
        return s[0] * s[1] > 0.0;
    };
    constexpr int scan = 400;
    double prev_c = c_max / scan;
    bool prev = sign_of(prev_c);
    for (int i = 2; i <= scan; ++i) {
        const double c = c_max * i / scan;
        const bool cur = sign_of(c);
        if (cur != prev) {
            double lo = prev_c;
            double hi = c;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (sign_of(mid) == prev) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            const double cs = 0.5 * (lo + hi);
            ThreadDetachment d;
            d.R2 = cs * cs * m.m1 * m.m1;
            d.R2_predicted = 2.0 * gamma / alpha;
            d.s_below = product(0.95 * cs);
            d.s_above = product(1.05 * cs);
            return d;
        }
        prev = cur;
        prev_c = c;
    }
    return std::nullopt;
}

}  // namespace s3tb
