#pragma once

#include "s3tb/energy_casimir.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace s3tb::cli {

using nlohmann::json;

/// [w, x, y, z].
[[nodiscard]] json to_json(const Quaternion& q);
[[nodiscard]] Quaternion quaternion_from_json(const json& j);

/// {"g1": [w, x, y, z], "p1": [...], "g2": [...], "p2": [...]}.
[[nodiscard]] json to_json(const PhaseState& s);
[[nodiscard]] PhaseState state_from_json(const json& j);
/// A single state object or an array of them.
[[nodiscard]] std::vector<PhaseState> states_from_json(const json& j);

[[nodiscard]] json to_json(const InvariantPoint& p);
[[nodiscard]] json to_json(const RelativeEquilibrium& re);
[[nodiscard]] json to_json(const LinearizationReport& rep);
[[nodiscard]] json to_json(const DriftReport& d);
[[nodiscard]] json to_json(const std::complex<double>& z);

[[nodiscard]] json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace s3tb::cli
