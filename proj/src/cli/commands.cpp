#include "s3tb/cli/commands.hpp"

#include "s3tb/cli/json_io.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <variant>
#include <iomanip>

#ifndef S3TB_VERSION
#define S3TB_VERSION "0.0.0"
#endif

namespace s3tb::cli {

namespace {

namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

struct Global {
    std::string config;
    std::string out_dir{"."};
    std::uint64_t seed{1};
};

struct ModelOpts {
    double m1{1.0};
    double m2{1.0};
    std::string potential{"grav"};
    double alpha{1.0};
    double gamma{1.0};
    CLI::Option* o_m1{nullptr};
    CLI::Option* o_m2{nullptr};
    CLI::Option* o_pot{nullptr};
};

struct Model {
    MassParams m;
    Potential pot{Potential::gravitational()};
    bool lagrange{false};
    double alpha{0};
    double gamma{0};
};

void add_model_options(CLI::App* app, ModelOpts& o) {
    o.o_m1 = app->add_option("--m1", o.m1, "first mass")->capture_default_str();
    o.o_m2 = app->add_option("--m2", o.m2, "second mass")->capture_default_str();
    o.o_pot = app->add_option("--potential", o.potential, "grav, linear:<gamma> or lagrange")->capture_default_str();
    app->add_option("--alpha", o.alpha, "Lagrange top: alpha in (0, 2]")->capture_default_str();
    app->add_option("--gamma", o.gamma, "Lagrange top: gamma")->capture_default_str();
}

bool given(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

Model resolve_model(const ModelOpts& o, const Model* fallback = nullptr) {
    Model out;
    if (o.potential == "lagrange") {
        if (given(o.o_m1) || given(o.o_m2)) {
            throw std::invalid_argument("--potential lagrange fixes m1 = m2 = 1/alpha; do not pass masses");
        }
        const HamiltonianKind kind = HamiltonianKind::lagrange(o.alpha, o.gamma);
        out.m = kind.effective_masses();
        out.pot = kind.effective_potential();
        out.lagrange = true;
        out.alpha = o.alpha;
        out.gamma = o.gamma;
        return out;
    }
    if (fallback != nullptr && !given(o.o_pot)) {
        out.pot = fallback->pot;
    } else {
        out.pot = Potential::parse(o.potential);
    }
    out.m = MassParams(given(o.o_m1) || !fallback ? o.m1 : fallback->m.m1,
                       given(o.o_m2) || !fallback ? o.m2 : fallback->m.m2);
    return out;
}

json model_json(const Model& md) {
    json j{{"m1", md.m.m1}, {"m2", md.m.m2}, {"potential", md.pot.describe()}};
    if (md.lagrange) {
        j["alpha"] = md.alpha;
        j["gamma"] = md.gamma;
    }
    return j;
}

// JSON config values become option results unless the flag was given on the command line.
// Accepts a flat object, {"<command>": {...}}, or a manifest written by a previous run.
void apply_config(CLI::App* sub, const json& file) {
    const json& all = file.contains("config") && file.at("config").is_object() ? file.at("config") : file;
    const json& section = all.contains(sub->get_name()) ? all.at(sub->get_name()) : all;
    if (!section.is_object()) throw std::invalid_argument("config: expected an object");
    for (const auto& [key, value] : section.items()) {
        if (key == "config") continue;
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr) opt = sub->get_option_no_throw(key);
        if (opt == nullptr) throw std::invalid_argument("config: unknown key '" + key + "' for " + sub->get_name());
        if (opt->count() > 0 || value.is_null()) continue;
        std::string text;
        if (value.is_string()) {
            text = value.get<std::string>();
        } else if (value.is_boolean()) {
            text = value.get<bool>() ? "true" : "false";
        } else if (value.is_number()) {
            text = value.dump();
        } else {
            throw std::invalid_argument("config: value of '" + key + "' must be a scalar");
        }
        opt->add_result(text);
        opt->run_callback();
    }
}

json config_echo(const CLI::App* sub) {
    json j = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        const std::string name = opt->get_lnames().empty() ? opt->get_name() : opt->get_lnames().front();
        if (name == "help" || name == "config") continue;
        if (opt->get_expected_min() == 0) {
            j[name] = opt->count() > 0;
            continue;
        }
        const std::string v = opt->count() > 0 ? opt->results().back() : opt->get_default_str();
        if (v.empty()) {
            j[name] = nullptr;
            continue;
        }
        char* end = nullptr;
        const long long n = std::strtoll(v.c_str(), &end, 10);
        if (end != nullptr && *end == '\0') {
            j[name] = n;
            continue;
        }
        const double d = std::strtod(v.c_str(), &end);
        if (!v.empty() && end != nullptr && *end == '\0' && std::isfinite(d)) {
            j[name] = d;
        } else {
            j[name] = v;
        }
    }
    return j;
}

void write_manifest(const Global& g, const CLI::App* sub, const std::vector<std::string>& outputs) {
    json manifest{{"tool", "s3tb"},
                  {"version", S3TB_VERSION},
                  {"command", sub->get_name()},
                  {"seed", g.seed},
                  {"config", {{sub->get_name(), config_echo(sub)}}},
                  {"outputs", outputs}};
    write_json_file((fs::path(g.out_dir) / (sub->get_name() + ".manifest.json")).string(), manifest);
}

std::string out_path(const Global& g, const std::string& name) {
    fs::create_directories(g.out_dir);
    return (fs::path(g.out_dir) / name).string();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    return f;
}

// Scenarios -----------------------------------------------------------------

struct Scenario {
    PhaseState state;
    Model model;
};

Scenario make_scenario(const std::string& name) {
    Scenario sc;
    if (name == "re-acute-demo") {
        sc.model.m = MassParams(1.5, 1.0);
        sc.model.pot = Potential::gravitational();
        sc.state = make_re(1.0, 0.8, sc.model.m, sc.model.pot).state;
    } else if (name == "antipodal-rest") {
        sc.model.m = MassParams(1.0, 1.0);
        sc.model.pot = Potential::linear(1.0);
        sc.state.g1 = Quaternion{1.0};
        sc.state.g2 = Quaternion{-1.0};
    } else if (name == "collision-course") {
        sc.model.m = MassParams(1.0, 1.0);
        sc.model.pot = Potential::gravitational();
        sc.state.g1 = Quaternion{1.0};
        sc.state.g2 = Quaternion::exp_i(0.6);
        sc.state.p1 = 0.3 * (Quaternion{0.0, 1.0, 0.0, 0.0} * sc.state.g1);
        sc.state.p2 = -0.3 * (Quaternion{0.0, 1.0, 0.0, 0.0} * sc.state.g2);
    } else {
        throw std::invalid_argument("unknown scenario '" + name + "'");
    }
    return sc;
}

PhaseState random_state(const std::string& kind, Rng& rng, double scale) {
    if (kind == "generic") return random_phase_state(rng, scale, 0.05);
    if (kind == "cospherical") return random_cospherical_state(rng, scale, 0.05);
    if (kind == "cocircular") return random_cocircular_state(rng, scale, 0.05);
    if (kind == "imaginary") return random_imaginary_state(rng, scale, 0.05);
    throw std::invalid_argument("unknown random kind '" + kind + "'");
}

// simulate --------------------------------------------------------------------

struct SimulateOpts {
    ModelOpts model;
    std::string scenario;
    std::string state_file;
    std::string random;
    double momentum_scale{1.0};
    double T{10.0};
    double rel_tol{1e-10};
    double abs_tol{1e-10};
    double max_step{0.0};
    std::size_t stride{1};
    bool projection{false};
    std::string space{"full"};
    std::string hamiltonian{"two_body"};
    std::string out{"trajectory.csv"};
};

int cmd_simulate(const Global& g, CLI::App* sub, const SimulateOpts& o) {
    const int sources = int(!o.scenario.empty()) + int(!o.state_file.empty()) + int(!o.random.empty());
    if (sources != 1) throw std::invalid_argument("simulate: give exactly one of --scenario, --state, --random");
    if (!(o.T > 0.0) || !std::isfinite(o.T)) throw std::invalid_argument("simulate: --T must be positive");
    PhaseState s0;
    Model md;
    if (!o.scenario.empty()) {
        const Scenario sc = make_scenario(o.scenario);
        s0 = sc.state;
        md = resolve_model(o.model, &sc.model);
    } else {
        md = resolve_model(o.model);
        if (!o.state_file.empty()) {
            s0 = state_from_json(read_json_file(o.state_file));
        } else {
            Rng rng(g.seed);
            s0 = random_state(o.random, rng, o.momentum_scale);
        }
    }
    s0.validate();
    FlowConfig cfg;
    cfg.rel_tol = o.rel_tol;
    cfg.abs_tol = o.abs_tol;
    cfg.max_step = o.max_step;
    cfg.stride = o.stride;
    cfg.projection = o.projection;
    cfg.validate();

    const std::string traj_path = out_path(g, o.out);
    auto csv = open_out(traj_path);
    json summary{{"model", model_json(md)}, {"initial_state", to_json(s0)}, {"space", o.space}};
    if (o.space == "full") {
        const auto tr = integrate_full(s0, md.m, md.pot, o.T, cfg);
        write_trajectory_csv(csv, tr, md.m, md.pot);
        summary["drift"] = to_json(drift(tr, md.m, md.pot));
        summary["accepted"] = tr.accepted;
        summary["rejected"] = tr.rejected;
        summary["t_final"] = tr.t.back();
    } else if (o.space == "left") {
        const auto tr = integrate_reduced(left_reduce(s0), md.m, md.pot, o.T, cfg);
        Trajectory<8> inv;
        inv.t = tr.t;
        for (const auto& v : tr.x) inv.x.push_back(hilbert_map(unpack_reduced(v, Side::left)).to_array());
        write_trajectory_csv(csv, inv, HamiltonianKind::two_body(md.m, md.pot));
        summary["drift"] = to_json(drift(tr, Side::left, md.m, md.pot));
        summary["accepted"] = tr.accepted;
        summary["rejected"] = tr.rejected;
        summary["t_final"] = tr.t.back();
    } else if (o.space == "invariant") {
        HamiltonianKind kind = HamiltonianKind::two_body(md.m, md.pot);
        if (o.hamiltonian == "lagrange_altered" || o.hamiltonian == "lagrange") {
            if (!md.lagrange) throw std::invalid_argument("simulate: --hamiltonian " + o.hamiltonian + " needs --potential lagrange");
            kind = o.hamiltonian == "lagrange" ? HamiltonianKind::lagrange(md.alpha, md.gamma)
                                               : HamiltonianKind::lagrange_altered(md.alpha, md.gamma);
        } else if (o.hamiltonian != "two_body") {
            throw std::invalid_argument("simulate: unknown hamiltonian '" + o.hamiltonian + "'");
        }
        const InvariantPoint p0 = invariants_of(s0);
        const auto tr = kind.tag == HamiltonianTag::two_body ? integrate_invariant(p0, md.m, md.pot, o.T, cfg)
                                                             : integrate_invariant(p0, kind, o.T, cfg);
        write_trajectory_csv(csv, tr, kind);
        summary["drift"] = to_json(drift(tr, kind));
        summary["accepted"] = tr.accepted;
        summary["rejected"] = tr.rejected;
        summary["t_final"] = tr.t.back();
    } else {
        throw std::invalid_argument("simulate: --space must be full, left or invariant");
    }
    csv.close();
    const std::string drift_path = out_path(g, "drift.json");
    write_json_file(drift_path, summary);
    write_manifest(g, sub, {traj_path, drift_path});
    std::cout << summary.dump(2) << '\n';
    return 0;
}

// reduce ----------------------------------------------------------------------

struct ReduceOpts {
    std::string state_file;
    std::string trajectory;
    std::string generate;
    int count{10};
    double momentum_scale{1.0};
    std::string out{"reduced.csv"};
};

std::vector<std::pair<double, PhaseState>> read_full_trajectory(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::string line;
    std::getline(in, line);
    if (line.rfind("t,g1w,g1x,g1y,g1z,p1w", 0) != 0) {
        throw std::invalid_argument(path + ": not a full-space trajectory CSV");
    }
    std::vector<std::pair<double, PhaseState>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ',')) {
            try {
                v.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": malformed number");
            }
        }
        if (v.size() < 17) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": too few columns");
        FullVec x{};
        std::copy(v.begin() + 1, v.begin() + 17, x.begin());
        rows.emplace_back(v[0], unpack_full(x));
    }
    return rows;
}

int cmd_reduce(const Global& g, CLI::App* sub, const ReduceOpts& o) {
    const int sources = int(!o.state_file.empty()) + int(!o.trajectory.empty()) + int(!o.generate.empty());
    if (sources != 1) throw std::invalid_argument("reduce: give exactly one of --state, --trajectory, --generate");
    std::vector<std::pair<double, PhaseState>> rows;
    if (!o.state_file.empty()) {
        const auto states = states_from_json(read_json_file(o.state_file));
        for (std::size_t i = 0; i < states.size(); ++i) rows.emplace_back(double(i), states[i]);
    } else if (!o.trajectory.empty()) {
        rows = read_full_trajectory(o.trajectory);
    } else {
        if (o.count < 1) throw std::invalid_argument("reduce: --count must be positive");
        Rng rng(g.seed);
        for (int i = 0; i < o.count; ++i) rows.emplace_back(double(i), random_state(o.generate, rng, o.momentum_scale));
    }
    const std::string path = out_path(g, o.out);
    auto csv = open_out(path);
    csv << "t," << invariant_csv_header() << ",C1,C2,C3,stratum\n" << std::setprecision(17);
    std::map<std::string, int> counts;
    for (const auto& [t, s] : rows) {
        const InvariantPoint p = invariants_of(s);
        const CasimirValues c = casimirs(p);
        const char* label = to_string(stratum_classify(p));
        ++counts[label];
        csv << t << ',' << invariant_csv_row(p) << ',' << c.C1 << ',' << c.C2 << ',' << c.C3 << ',' << label << '\n';
    }
    csv.close();
    write_manifest(g, sub, {path});
    std::cout << json{{"rows", rows.size()}, {"strata", counts}, {"output", path}}.dump(2) << '\n';
    return 0;
}

// re / stability ----------------------------------------------------------------

struct REOpts {
    ModelOpts model;
    double theta{1.0};
    double eta{1.0};
    double tau{0.0};
    double phi1{0.0};
    double xi{0.0};
    CLI::Option* o_tau{nullptr};
    CLI::Option* o_phi1{nullptr};
    CLI::Option* o_xi{nullptr};
    CLI::Option* o_eta{nullptr};
    std::string out;
};

void add_re_options(CLI::App* app, REOpts& o) {
    add_model_options(app, o.model);
    app->add_option("--theta", o.theta, "angle between the particles")->capture_default_str();
    o.o_eta = app->add_option("--eta", o.eta, "|eta|")->capture_default_str();
    o.o_tau = app->add_option("--tau", o.tau, "log(|xi| / |eta|); replaces --eta");
    o.o_phi1 = app->add_option("--phi1", o.phi1, "right-angled family: free angle phi1");
    o.o_xi = app->add_option("--xi", o.xi, "singular family: |xi|");
    app->add_option("--out", o.out, "also write the JSON to this file (inside --out-dir)");
}

bool near_angle(double a, double b) { return std::abs(a - b) <= kAngleTolerance; }

// Returns the RE when the parameters determine one, otherwise the solution summary.
std::variant<RelativeEquilibrium, RESolution> build_re(const REOpts& o, const Model& md) {
    if (given(o.o_tau) && given(o.o_eta)) throw std::invalid_argument("give --eta or --tau, not both");
    const bool singular = near_angle(o.theta, 0.0) || near_angle(o.theta, kPi);
    if (singular) {
        if (!given(o.o_xi)) return solve_re(o.theta, o.eta, md.m, md.pot);
        return make_singular(near_angle(o.theta, kPi), o.xi, o.eta, md.m, md.pot);
    }
    if (given(o.o_xi)) throw std::invalid_argument("--xi applies only to theta = 0 or pi");
    if (near_angle(o.theta, 0.5 * kPi) && given(o.o_phi1)) {
        return given(o.o_tau) ? right_angled_from_tau(o.phi1, o.tau, md.m, md.pot)
                              : make_right_angled(o.phi1, o.eta, md.m, md.pot);
    }
    if (given(o.o_phi1)) throw std::invalid_argument("--phi1 applies only to theta = pi/2");
    if (given(o.o_tau)) return re_from_tau(o.theta, o.tau, md.m, md.pot);
    const RESolution sol = solve_re(o.theta, o.eta, md.m, md.pot);
    if (sol.unique) return *sol.unique;
    return sol;
}

json solution_json(const RESolution& s) {
    json j{{"kind", to_string(s.kind)}, {"theta", s.theta}, {"eta", s.eta_mag}, {"y", s.y}};
    if (s.kind == REKind::right_angled) {
        j["line_sum"] = s.line_sum;
        j["note"] = "one-parameter family; pass --phi1 to select a member";
    } else {
        j["note"] = "two-parameter family; pass --xi to select a member";
    }
    return j;
}

void emit(const Global& g, CLI::App* sub, const std::string& out, const json& j) {
    std::vector<std::string> outputs;
    if (!out.empty()) {
        const std::string path = out_path(g, out);
        write_json_file(path, j);
        outputs.push_back(path);
    } else {
        fs::create_directories(g.out_dir);
    }
    write_manifest(g, sub, outputs);
    std::cout << j.dump(2) << '\n';
}

int cmd_re(const Global& g, CLI::App* sub, const REOpts& o) {
    const Model md = resolve_model(o.model);
    const auto res = build_re(o, md);
    json j;
    if (const auto* re = std::get_if<RelativeEquilibrium>(&res)) {
        j = to_json(*re);
        j["lever_residual"] = re->singular() ? 0.0 : lever_residual(*re);
        j["fixed_point_residual"] = verify_re_fixed_point(*re);
        j["subgroup"] = to_string(classify_subgroup(re->xi_mag, re->eta_mag));
    } else {
        j = solution_json(std::get<RESolution>(res));
    }
    j["model"] = model_json(md);
    emit(g, sub, o.out, j);
    return 0;
}

int cmd_stability(const Global& g, CLI::App* sub, const REOpts& o) {
    const Model md = resolve_model(o.model);
    const auto res = build_re(o, md);
    const auto* re = std::get_if<RelativeEquilibrium>(&res);
    if (re == nullptr) {
        throw std::invalid_argument("stability: the parameters select a family, not a single RE (pass --phi1 or --xi)");
    }
    const LinearizationReport rep = linearize(*re);
    json j{{"re", to_json(*re)}, {"model", model_json(md)}, {"linearization", to_json(rep)}};
    if (md.pot.kind() == PotentialKind::gravitational && !re->singular()) {
        const CharPoly cp = charpoly_2body(*re);
        const ClosedFormPairs cf = closed_form_eigs_2body(*re);
        j["charpoly"] = {{"c0", cp.c0}, {"c2", cp.c2}};
        j["closed_form"] = {{"z", to_json(cf.z)}, {"w", to_json(cf.w)}, {"z2", cf.z2}, {"w2", cf.w2}};
    } else if (md.lagrange) {
        const LagrangeCharPoly lp = charpoly_lagrange(*re, md.alpha, md.gamma);
        json roots = json::array();
        for (const auto& r : lp.roots) roots.push_back(to_json(r));
        j["charpoly"] = {{"c0", lp.c0}, {"c2", lp.c2}, {"s1", lp.s1}, {"s2", lp.s2}, {"roots", roots}};
    }
    j["classification"] = to_string(rep.classification);
    emit(g, sub, o.out, j);
    return 0;
}

// ec-surface ----------------------------------------------------------------------

struct SurfaceOpts {
    ModelOpts model;
    std::string family{"isosceles"};
    double a_min{0}, a_max{0}, tau_min{-3.0}, tau_max{3.0};
    int na{100}, ntau{100};
    CLI::Option* o_amin{nullptr};
    CLI::Option* o_amax{nullptr};
    unsigned threads{0};
    std::string out{"surface.csv"};
    bool plot_script{false};
    bool fold{false};
};

int cmd_ec_surface(const Global& g, CLI::App* sub, const SurfaceOpts& o) {
    const Model md = resolve_model(o.model);
    const ECFamily fam = parse_ec_family(o.family);
    const bool attractive = md.pot.force(0.0, md.m) > 0.0;
    ECGrid grid = ECGrid::defaults(fam, attractive);
    if (given(o.o_amin)) grid.a_min = o.a_min;
    if (given(o.o_amax)) grid.a_max = o.a_max;
    grid.tau_min = o.tau_min;
    grid.tau_max = o.tau_max;
    grid.na = o.na;
    grid.ntau = o.ntau;
    const auto samples = ec_surface(grid, md.m, md.pot, o.threads);
    const std::string path = out_path(g, o.out);
    {
        auto csv = open_out(path);
        write_ec_csv(csv, samples);
    }
    std::vector<std::string> outputs{path};
    if (o.plot_script) {
        const std::string script = out_path(g, fs::path(o.out).stem().string() + "_plot.py");
        auto py = open_out(script);
        write_plot_script(py, fs::path(path).filename().string());
        outputs.push_back(script);
    }
    int folds = 0;
    if (o.fold) {
        if (md.pot.kind() != PotentialKind::gravitational) throw std::invalid_argument("--fold needs --potential grav");
        const std::string fold_path = out_path(g, fs::path(o.out).stem().string() + "_fold.csv");
        auto csv = open_out(fold_path);
        csv << "theta,tau,c0,jacobian_det,jacobian_det_normalised,w2_below,w2_above\n" << std::setprecision(17);
        const int n = std::max(2, grid.na);
        for (int i = 0; i < n; ++i) {
            const double theta = 0.5 * kPi + (kPi - 0.5 * kPi) * (i + 0.5) / n;
            const auto f = fold_locus(theta, md.m);
            if (!f) continue;
            ++folds;
            csv << f->theta << ',' << f->tau << ',' << f->c0_at_fold << ',' << f->jacobian_det << ','
                << f->jacobian_det_normalised << ',' << f->w2_below << ',' << f->w2_above << '\n';
        }
        outputs.push_back(fold_path);
    }
    std::size_t failed = 0;
    for (const auto& s : samples) failed += s.ok() ? 0 : 1;
    write_manifest(g, sub, outputs);
    json summary{{"rows", samples.size()}, {"failed", failed}, {"family", to_string(fam)}, {"outputs", outputs}};
    if (o.fold) summary["fold_points"] = folds;
    std::cout << summary.dump(2) << '\n';
    return 0;
}

}  // namespace

std::vector<std::string> scenario_names() { return {"re-acute-demo", "antipodal-rest", "collision-course"}; }

int run(int argc, const char* const* argv) {
    CLI::App app{"Two bodies on the 3-sphere: simulation, reduction, relative equilibria and stability"};
    app.set_version_flag("--version", std::string(S3TB_VERSION));
    app.require_subcommand(1);
    Global g;

    auto add_global = [&g](CLI::App* sub) {
        sub->add_option("--config", g.config, "JSON config; keys are long option names");
        sub->add_option("--out-dir", g.out_dir, "directory for outputs and the manifest")->capture_default_str();
        sub->add_option("--seed", g.seed, "seed for random states")->capture_default_str();
    };

    SimulateOpts sim;
    CLI::App* simulate = app.add_subcommand("simulate", "integrate a trajectory and report invariant drift");
    add_global(simulate);
    add_model_options(simulate, sim.model);
    simulate->add_option("--scenario", sim.scenario, "re-acute-demo, antipodal-rest or collision-course");
    simulate->add_option("--state", sim.state_file, "JSON file with g1, p1, g2, p2");
    simulate->add_option("--random", sim.random, "generic, cospherical, cocircular or imaginary");
    simulate->add_option("--momentum-scale", sim.momentum_scale)->capture_default_str();
    simulate->add_option("--T", sim.T, "final time")->capture_default_str();
    simulate->add_option("--rel-tol", sim.rel_tol)->capture_default_str();
    simulate->add_option("--abs-tol", sim.abs_tol)->capture_default_str();
    simulate->add_option("--max-step", sim.max_step)->capture_default_str();
    simulate->add_option("--stride", sim.stride, "keep every n-th accepted step")->capture_default_str();
    simulate->add_flag("--projection", sim.projection, "renormalise after each step");
    simulate->add_option("--space", sim.space, "full, left or invariant")->capture_default_str();
    simulate->add_option("--hamiltonian", sim.hamiltonian, "invariant space: two_body, lagrange or lagrange_altered")
        ->capture_default_str();
    simulate->add_option("--out", sim.out, "trajectory CSV")->capture_default_str();

    ReduceOpts red;
    CLI::App* reduce = app.add_subcommand("reduce", "invariants, Casimirs and strata of states");
    add_global(reduce);
    reduce->add_option("--state", red.state_file, "JSON state or array of states");
    reduce->add_option("--trajectory", red.trajectory, "full-space trajectory CSV from simulate");
    reduce->add_option("--generate", red.generate, "random states: generic, cospherical, cocircular or imaginary");
    reduce->add_option("--count", red.count)->capture_default_str();
    reduce->add_option("--momentum-scale", red.momentum_scale)->capture_default_str();
    reduce->add_option("--out", red.out)->capture_default_str();

    REOpts reo;
    CLI::App* re = app.add_subcommand("re", "construct and check a relative equilibrium");
    add_global(re);
    std::string re_action;
    re->add_option("action", re_action, "optional verb: classify")->check(CLI::IsMember({"classify"}));
    add_re_options(re, reo);

    REOpts sto;
    CLI::App* stab = app.add_subcommand("stability", "linearisation, eigenvalues and classification at an RE");
    add_global(stab);
    add_re_options(stab, sto);

    SurfaceOpts sur;
    CLI::App* surface = app.add_subcommand("ec-surface", "sample the energy-Casimir map over an RE family");
    add_global(surface);
    add_model_options(surface, sur.model);
    surface->add_option("--family", sur.family, "isosceles (main), right-angled, thread0 or threadpi")
        ->capture_default_str();
    sur.o_amin = surface->add_option("--a-min", sur.a_min, "first coordinate: theta, phi1 or |eta|");
    sur.o_amax = surface->add_option("--a-max", sur.a_max);
    surface->add_option("--na", sur.na)->capture_default_str();
    surface->add_option("--tau-min", sur.tau_min)->capture_default_str();
    surface->add_option("--tau-max", sur.tau_max)->capture_default_str();
    surface->add_option("--ntau", sur.ntau)->capture_default_str();
    surface->add_option("--threads", sur.threads, "0 uses S3TB_THREADS or all cores")->capture_default_str();
    surface->add_option("--out", sur.out)->capture_default_str();
    surface->add_flag("--plot-script", sur.plot_script, "also write a matplotlib script for the CSV");
    surface->add_flag("--fold", sur.fold, "also write the fold curve over obtuse theta");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        if (!g.config.empty()) apply_config(sub, read_json_file(g.config));
        if (sub == simulate) return cmd_simulate(g, sub, sim);
        if (sub == reduce) return cmd_reduce(g, sub, red);
        if (sub == re) return cmd_re(g, sub, reo);
        if (sub == stab) return cmd_stability(g, sub, sto);
        if (sub == surface) return cmd_ec_surface(g, sub, sur);
    } catch (const IntegrationError& e) {
        std::cerr << json{{"error", "integration"}, {"message", e.what()}, {"time", e.time()}}.dump() << '\n';
        return 3;
    } catch (const SingularityError& e) {
        std::cerr << json{{"error", "singularity"}, {"message", e.what()}, {"r", e.r()}}.dump() << '\n';
        return 3;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "invalid"}, {"message", e.what()}}.dump() << '\n';
        return 2;
    }
    return 1;
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("s3tb");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace s3tb::cli
