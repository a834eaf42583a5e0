#pragma once

#include <json.hpp>
#include <string_view>

#include "ks1d/scenario.hpp"

namespace ks1d {

/// Parses a JSON run configuration, fills documented defaults and validates
/// it. Unknown keys, type mismatches and invariant violations throw
/// ConfigError carrying the dotted key (e.g. "ic.mass").
///
/// Required: p, n_cells, t_end, ic.family, ic.mass.
/// Defaults: sample_interval = t_end / 100, quadrature_tol = 1e-12,
/// ic.amplitude = 0.5, ic.width = 0.1, ic.center = 0.5,
/// ic.v0_mode = "equal_to_u0", control as in StepControl,
/// dynamics = "keller_segel", output = "".
RunConfig parse_config(std::string_view text);
RunConfig parse_config(const nlohmann::json& doc);

/// Fully populated JSON form of a config; parse_config(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& config);

}  // namespace ks1d
