#include "ks1d/config.hpp"

#include <cmath>
#include <initializer_list>
#include <string>

#include "ks1d/errors.hpp"

namespace ks1d {

namespace {

using nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json& obj, const std::string& prefix, std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) throw ConfigError(join(prefix, item.key()), "unknown key");
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const std::string& prefix, const char* key) {
  const json* value = find(obj, key);
  if (value == nullptr) throw ConfigError(join(prefix, key), "required key missing");
  return *value;
}

double as_number(const json& value, const std::string& key) {
  if (!value.is_number()) throw ConfigError(key, "expected a number");
  return value.get<double>();
}

int as_int(const json& value, const std::string& key) {
  if (value.is_number_integer()) return value.get<int>();
  if (value.is_number_float()) {
    const double d = value.get<double>();
    if (std::floor(d) == d && std::abs(d) < 1e9) return static_cast<int>(d);
  }
  throw ConfigError(key, "expected an integer");
}

std::string as_string(const json& value, const std::string& key) {
  if (!value.is_string()) throw ConfigError(key, "expected a string");
  return value.get<std::string>();
}

void read_number(const json& obj, const std::string& prefix, const char* key, double& target) {
  if (const json* value = find(obj, key)) target = as_number(*value, join(prefix, key));
}

InitialCondition parse_ic(const json& obj) {
  const std::string prefix = "ic";
  if (!obj.is_object()) throw ConfigError(prefix, "expected an object");
  reject_unknown(obj, prefix, {"family", "mass", "amplitude", "width", "center", "v0_mode"});
  InitialCondition ic;
  ic.family = ic_family_from_string(as_string(require(obj, prefix, "family"), "ic.family"));
  ic.mass = as_number(require(obj, prefix, "mass"), "ic.mass");
  read_number(obj, prefix, "amplitude", ic.amplitude);
  read_number(obj, prefix, "width", ic.width);
  read_number(obj, prefix, "center", ic.center);
  if (const json* mode = find(obj, "v0_mode")) ic.v0_mode = v0_mode_from_string(as_string(*mode, "ic.v0_mode"));
  return ic;
}

StepControl parse_control(const json& obj) {
  const std::string prefix = "control";
  if (!obj.is_object()) throw ConfigError(prefix, "expected an object");
  reject_unknown(obj, prefix, {"cfl_safety", "rel_tol", "dt_min", "dt_max", "u_max_threshold"});
  StepControl control;
  read_number(obj, prefix, "cfl_safety", control.cfl_safety);
  read_number(obj, prefix, "rel_tol", control.rel_tol);
  read_number(obj, prefix, "dt_min", control.dt_min);
  read_number(obj, prefix, "dt_max", control.dt_max);
  read_number(obj, prefix, "u_max_threshold", control.u_max_threshold);
  return control;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "configuration must be a JSON object");
  reject_unknown(doc, "",
                 {"p", "quadrature_tol", "n_cells", "t_end", "sample_interval", "ic", "control", "dynamics",
                  "output"});
  RunConfig config;
  config.p = as_number(require(doc, "", "p"), "p");
  config.n_cells = as_int(require(doc, "", "n_cells"), "n_cells");
  config.t_end = as_number(require(doc, "", "t_end"), "t_end");
  config.ic = parse_ic(require(doc, "", "ic"));
  config.sample_interval = config.t_end / 100.0;
  read_number(doc, "", "sample_interval", config.sample_interval);
  read_number(doc, "", "quadrature_tol", config.quadrature_tol);
  if (const json* control = find(doc, "control")) config.control = parse_control(*control);
  if (const json* dyn = find(doc, "dynamics")) config.dynamics = dynamics_from_string(as_string(*dyn, "dynamics"));
  if (const json* out = find(doc, "output")) config.output = as_string(*out, "output");
  validate(config);
  return config;
}

json to_json(const RunConfig& config) {
  return json{
      {"p", config.p},
      {"quadrature_tol", config.quadrature_tol},
      {"n_cells", config.n_cells},
      {"t_end", config.t_end},
      {"sample_interval", config.sample_interval},
      {"ic",
       {{"family", to_string(config.ic.family)},
        {"mass", config.ic.mass},
        {"amplitude", config.ic.amplitude},
        {"width", config.ic.width},
        {"center", config.ic.center},
        {"v0_mode", to_string(config.ic.v0_mode)}}},
      {"control",
       {{"cfl_safety", config.control.cfl_safety},
        {"rel_tol", config.control.rel_tol},
        {"dt_min", config.control.dt_min},
        {"dt_max", config.control.dt_max},
        {"u_max_threshold", config.control.u_max_threshold}}},
      {"dynamics", to_string(config.dynamics)},
      {"output", config.output},
  };
}

}  // namespace ks1d
