#include "s3tb/cli/json_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace s3tb::cli {

json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

Quaternion quaternion_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) throw std::invalid_argument("quaternion must be an array [w, x, y, z]");
    Quaternion q{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
    for (double v : {q.w, q.x, q.y, q.z}) {
        if (!std::isfinite(v)) throw std::invalid_argument("quaternion entries must be finite");
    }
    return q;
}

json to_json(const PhaseState& s) {
    return {{"g1", to_json(s.g1)}, {"p1", to_json(s.p1)}, {"g2", to_json(s.g2)}, {"p2", to_json(s.p2)}};
}

PhaseState state_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("state must be an object with g1, p1, g2, p2");
    PhaseState s;
    s.g1 = quaternion_from_json(j.at("g1"));
    s.p1 = quaternion_from_json(j.at("p1"));
    s.g2 = quaternion_from_json(j.at("g2"));
    s.p2 = quaternion_from_json(j.at("p2"));
    s.validate();
    return s;
}

std::vector<PhaseState> states_from_json(const json& j) {
    std::vector<PhaseState> out;
    if (j.is_array()) {
        for (const auto& e : j) out.push_back(state_from_json(e));
    } else if (j.is_object() && j.contains("states")) {
        return states_from_json(j.at("states"));
    } else {
        out.push_back(state_from_json(j));
    }
    return out;
}

json to_json(const InvariantPoint& p) {
    json j;
    const auto a = p.to_array();
    for (std::size_t i = 0; i < a.size(); ++i) j[kInvariantNames[i]] = a[i];
    return j;
}

json to_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

json to_json(const RelativeEquilibrium& re) {
    json branches = json::array();
    for (const auto& b : re.branches) {
        branches.push_back({{"phi1", b.phi1}, {"zeta", b.zeta}, {"admissible", b.admissible}});
    }
    return {{"kind", to_string(re.kind)},
            {"isosceles", re.isosceles},
            {"theta", re.theta},
            {"phi1", re.phi1},
            {"phi2", re.phi2},
            {"xi", re.xi_mag},
            {"eta", re.eta_mag},
            {"x1", re.x1},
            {"x2", re.x2},
            {"y", re.y},
            {"zeta", re.zeta},
            {"f", re.f},
            {"c", re.c},
            {"branches", branches},
            {"masses", {re.masses.m1, re.masses.m2}},
            {"potential", re.potential.describe()},
            {"state", to_json(re.state)}};
}

json to_json(const LinearizationReport& rep) {
    json ev = json::array();
    for (const auto& e : rep.eigenvalues) ev.push_back(to_json(e));
    json mat = json::array();
    for (int i = 0; i < 8; ++i) {
        json row = json::array();
        for (int k = 0; k < 8; ++k) row.push_back(rep.matrix(i, k));
        mat.push_back(row);
    }
    return {{"eigenvalues", ev},
            {"zero_count", rep.zero_count},
            {"classification", to_string(rep.classification)},
            {"matrix", mat}};
}

json to_json(const DriftReport& d) {
    return {{"H", d.H}, {"C1", d.C1}, {"C2", d.C2}, {"C3", d.C3}, {"syzygy", d.syzygy}, {"max", d.max()}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace s3tb::cli
