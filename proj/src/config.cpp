#include "evodom/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <utility>

#include "evodom/errors.hpp"

namespace evodom {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config error at " + (path.empty() ? "/" : path) + ": " +
                    what);
}

void require_object(const ordered_json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

// Closed schema: every present key must be in `allowed`.
void reject_unknown_keys(const ordered_json& j, const std::string& path,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known) fail(path, "unknown key \"" + item.key() + "\"");
  }
}

double get_number(const ordered_json& j, const std::string& path,
                  const char* key, double fallback, bool required = false) {
  if (!j.contains(key)) {
    if (required) fail(path, std::string("missing required key \"") + key + "\"");
    return fallback;
  }
  const auto& v = j.at(key);
  if (!v.is_number()) fail(path + "/" + key, "expected a number");
  return v.get<double>();
}

int get_int(const ordered_json& j, const std::string& path, const char* key,
            int fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) fail(path + "/" + key, "expected an integer");
  return v.get<int>();
}

std::string get_string(const ordered_json& j, const std::string& path,
                       const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_string()) fail(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_number_array(const ordered_json& v,
                                     const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number())
      fail(path + "/" + std::to_string(i), "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

// A coefficient of time is either a bare number (constant) or an object
// selecting one of the four shapes.
PeriodicFn parse_coefficient(const ordered_json& v, const std::string& path,
                             double period) {
  if (v.is_number()) return PeriodicFn::constant(v.get<double>(), period);
  require_object(v, path);
  reject_unknown_keys(v, path,
                      {"form", "value", "c0", "c1", "omega", "phase", "times",
                       "values"});
  const std::string form = get_string(v, path, "form", "");
  try {
    if (form == "constant") {
      reject_unknown_keys(v, path, {"form", "value"});
      return PeriodicFn::constant(get_number(v, path, "value", 0.0, true),
                                  period);
    }
    if (form == "affine_sin") {
      reject_unknown_keys(v, path, {"form", "c0", "c1", "omega", "phase"});
      return PeriodicFn::affine_sin(get_number(v, path, "c0", 0.0, true),
                                    get_number(v, path, "c1", 0.0, true),
                                    get_number(v, path, "omega", 0.0, true),
                                    get_number(v, path, "phase", 0.0), period);
    }
    if (form == "affine_abs_sin") {
      reject_unknown_keys(v, path, {"form", "c0", "c1", "omega"});
      return PeriodicFn::affine_abs_sin(get_number(v, path, "c0", 0.0, true),
                                        get_number(v, path, "c1", 0.0, true),
                                        get_number(v, path, "omega", 0.0, true),
                                        period);
    }
    if (form == "sampled") {
      reject_unknown_keys(v, path, {"form", "times", "values"});
      if (!v.contains("times") || !v.contains("values"))
        fail(path, "sampled form needs \"times\" and \"values\" arrays");
      return PeriodicFn::sampled(get_number_array(v.at("times"), path + "/times"),
                                 get_number_array(v.at("values"),
                                                  path + "/values"));
    }
  } catch (const ConfigError& e) {
    // Factory-level complaints (bad table, bad period) gain the JSON path.
    throw ConfigError("config error at " + path + ": " + e.what());
  }
  fail(path + "/form",
       "expected one of \"constant\", \"affine_sin\", \"affine_abs_sin\", "
       "\"sampled\"");
}

// Structural walk of a coefficient without constructing it (used when a
// preset overrides the model block: shapes are still validated, values are
// not interpreted).
void check_coefficient_shape(const ordered_json& v, const std::string& path) {
  if (v.is_number()) return;
  require_object(v, path);
  reject_unknown_keys(v, path,
                      {"form", "value", "c0", "c1", "omega", "phase", "times",
                       "values"});
  const std::string form = get_string(v, path, "form", "");
  if (form != "constant" && form != "affine_sin" && form != "affine_abs_sin" &&
      form != "sampled")
    fail(path + "/form",
         "expected one of \"constant\", \"affine_sin\", \"affine_abs_sin\", "
         "\"sampled\"");
}

ordered_json coefficient_to_json(const PeriodicFn& f) {
  switch (f.form()) {
    case PeriodicFn::Form::constant:
      return f.c0();
    case PeriodicFn::Form::affine_sin:
      return ordered_json{{"form", "affine_sin"},
                          {"c0", f.c0()},
                          {"c1", f.c1()},
                          {"omega", f.omega()},
                          {"phase", f.phase()}};
    case PeriodicFn::Form::affine_abs_sin:
      return ordered_json{{"form", "affine_abs_sin"},
                          {"c0", f.c0()},
                          {"c1", f.c1()},
                          {"omega", f.omega()}};
    case PeriodicFn::Form::sampled:
      return ordered_json{{"form", "sampled"},
                          {"times", f.sample_times()},
                          {"values", f.sample_values()}};
  }
  return nullptr;  // unreachable
}

ModelParams parse_model(const ordered_json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(j, path,
                      {"period", "d1", "d2", "a1", "a2", "b1", "b2", "c1",
                       "c2", "domain", "evolution"});
  const double period = get_number(j, path, "period", 0.0, true);
  if (!(period > 0.0)) fail(path + "/period", "period must be > 0");

  auto coeff = [&](const char* key) {
    if (!j.contains(key))
      fail(path, std::string("missing required key \"") + key + "\"");
    return parse_coefficient(j.at(key), path + "/" + key, period);
  };

  double y_left = 0.0, y_right = 1.0;
  if (j.contains("domain")) {
    const auto& d = j.at("domain");
    require_object(d, path + "/domain");
    reject_unknown_keys(d, path + "/domain", {"y_left", "y_right"});
    y_left = get_number(d, path + "/domain", "y_left", 0.0);
    y_right = get_number(d, path + "/domain", "y_right", 1.0);
  }

  PeriodicFn rho = PeriodicFn::constant(1.0, period);
  int dimension = 1;
  if (j.contains("evolution")) {
    const auto& e = j.at("evolution");
    require_object(e, path + "/evolution");
    reject_unknown_keys(e, path + "/evolution", {"rho", "dimension"});
    if (e.contains("rho"))
      rho = parse_coefficient(e.at("rho"), path + "/evolution/rho", period);
    dimension = get_int(e, path + "/evolution", "dimension", 1);
  }

  try {
    ModelParams params{
        get_number(j, path, "d1", 0.0, true),
        get_number(j, path, "d2", 0.0, true),
        coeff("a1"),
        coeff("a2"),
        coeff("b1"),
        coeff("b2"),
        coeff("c1"),
        coeff("c2"),
        EvolutionLaw(rho, dimension),
        y_left,
        y_right,
    };
    params.validate();
    return params;
  } catch (const ConfigError& e) {
    throw ConfigError("config error at " + path + ": " + e.what());
  }
}

// Shape-only walk of a model block that a preset overrides.
void check_model_shape(const ordered_json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(j, path,
                      {"period", "d1", "d2", "a1", "a2", "b1", "b2", "c1",
                       "c2", "domain", "evolution"});
  for (const char* key : {"period", "d1", "d2"})
    if (j.contains(key) && !j.at(key).is_number())
      fail(path + "/" + key, "expected a number");
  for (const char* key : {"a1", "a2", "b1", "b2", "c1", "c2"})
    if (j.contains(key)) check_coefficient_shape(j.at(key), path + "/" + key);
  if (j.contains("domain")) {
    require_object(j.at("domain"), path + "/domain");
    reject_unknown_keys(j.at("domain"), path + "/domain",
                        {"y_left", "y_right"});
  }
  if (j.contains("evolution")) {
    const auto& e = j.at("evolution");
    require_object(e, path + "/evolution");
    reject_unknown_keys(e, path + "/evolution", {"rho", "dimension"});
    if (e.contains("rho"))
      check_coefficient_shape(e.at("rho"), path + "/evolution/rho");
  }
}

InitialCondition parse_initial(const ordered_json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"kind", "amplitude", "value", "v1", "v2"});
  const std::string kind = get_string(j, path, "kind", "");
  try {
    if (kind == "sine_bump") {
      reject_unknown_keys(j, path, {"kind", "amplitude"});
      return InitialCondition::sine_bump(
          get_number(j, path, "amplitude", 5.0));
    }
    if (kind == "constant_clipped") {
      reject_unknown_keys(j, path, {"kind", "value"});
      return InitialCondition::constant_clipped(
          get_number(j, path, "value", 0.0, true));
    }
    if (kind == "sampled") {
      reject_unknown_keys(j, path, {"kind", "v1", "v2"});
      if (!j.contains("v1") || !j.contains("v2"))
        fail(path, "sampled initial data needs \"v1\" and \"v2\" arrays");
      auto v1 = get_number_array(j.at("v1"), path + "/v1");
      auto v2 = get_number_array(j.at("v2"), path + "/v2");
      Field f1 = Eigen::Map<const Field>(v1.data(), v1.size());
      Field f2 = Eigen::Map<const Field>(v2.data(), v2.size());
      return InitialCondition::sampled(std::move(f1), std::move(f2));
    }
  } catch (const ConfigError& e) {
    throw ConfigError("config error at " + path + ": " + e.what());
  }
  fail(path + "/kind",
       "expected one of \"sine_bump\", \"constant_clipped\", \"sampled\"");
}

ordered_json initial_to_json(const InitialCondition& ic) {
  switch (ic.kind) {
    case InitialCondition::Kind::sine_bump:
      return ordered_json{{"kind", "sine_bump"}, {"amplitude", ic.amplitude}};
    case InitialCondition::Kind::constant_clipped:
      return ordered_json{{"kind", "constant_clipped"}, {"value", ic.value}};
    case InitialCondition::Kind::sampled: {
      std::vector<double> v1(ic.v1.begin(), ic.v1.end());
      std::vector<double> v2(ic.v2.begin(), ic.v2.end());
      return ordered_json{{"kind", "sampled"}, {"v1", v1}, {"v2", v2}};
    }
  }
  return nullptr;  // unreachable
}

ordered_json model_to_json(const ModelParams& p) {
  return ordered_json{
      {"period", p.period()},
      {"d1", p.d1},
      {"d2", p.d2},
      {"a1", coefficient_to_json(p.a1)},
      {"a2", coefficient_to_json(p.a2)},
      {"b1", coefficient_to_json(p.b1)},
      {"b2", coefficient_to_json(p.b2)},
      {"c1", coefficient_to_json(p.c1)},
      {"c2", coefficient_to_json(p.c2)},
      {"domain", ordered_json{{"y_left", p.y_left}, {"y_right", p.y_right}}},
      {"evolution",
       ordered_json{{"rho", coefficient_to_json(p.law.rho_fn())},
                    {"dimension", p.law.dimension()}}},
  };
}

}  // namespace

const ModelParams& RunConfig::params() const {
  if (!model)
    throw ConfigError(
        "configuration names neither a preset nor a model block");
  return *model;
}

RunConfig parse_config(const ordered_json& doc, const std::string& where) {
  if (!doc.is_object())
    throw ConfigError("config error in " + where +
                      ": top level must be an object");
  reject_unknown_keys(doc, "",
                      {"preset", "model", "grid_n", "stepper", "initial",
                       "quad_nodes", "periodic", "monotone", "out_dir"});

  RunConfig cfg;

  if (doc.contains("preset")) {
    const auto& v = doc.at("preset");
    if (!v.is_string()) fail("/preset", "expected a string");
    auto p = preset_from_name(v.get<std::string>());
    if (!p)
      fail("/preset",
           "unknown preset \"" + v.get<std::string>() +
               "\" (expected example5_1, example5_2, or example5_3)");
    cfg.preset = *p;
  }

  if (cfg.preset) {
    // A preset fully overrides the model block; anything present must still
    // be well-formed, but its values are not interpreted.
    if (doc.contains("model")) check_model_shape(doc.at("model"), "/model");
    cfg.model = preset_params(*cfg.preset);
  } else if (doc.contains("model")) {
    cfg.model = parse_model(doc.at("model"), "/model");
  }

  cfg.grid_n = get_int(doc, "", "grid_n", cfg.grid_n);
  if (cfg.grid_n < 3) fail("/grid_n", "need at least 3 interior nodes");

  if (doc.contains("stepper")) {
    const auto& s = doc.at("stepper");
    require_object(s, "/stepper");
    reject_unknown_keys(s, "/stepper",
                        {"dt", "t_end", "scheme", "record_every"});
    cfg.stepper.dt = get_number(s, "/stepper", "dt", cfg.stepper.dt);
    cfg.stepper.t_end = get_number(s, "/stepper", "t_end", cfg.stepper.t_end);
    const std::string scheme =
        get_string(s, "/stepper", "scheme", "imex_be");
    if (scheme == "imex_be")
      cfg.stepper.scheme = Scheme::imex_be;
    else if (scheme == "imex_cn")
      cfg.stepper.scheme = Scheme::imex_cn;
    else
      fail("/stepper/scheme", "expected \"imex_be\" or \"imex_cn\"");
    cfg.stepper.record_every =
        get_int(s, "/stepper", "record_every", cfg.stepper.record_every);
  }
  if (!(cfg.stepper.dt > 0.0)) fail("/stepper/dt", "dt must be > 0");
  if (!(cfg.stepper.t_end > 0.0)) fail("/stepper/t_end", "t_end must be > 0");
  if (cfg.stepper.record_every < 1)
    fail("/stepper/record_every", "record_every must be >= 1");

  if (doc.contains("initial"))
    cfg.initial = parse_initial(doc.at("initial"), "/initial");

  cfg.quad_nodes = get_int(doc, "", "quad_nodes", cfg.quad_nodes);
  if (cfg.quad_nodes < 2 || cfg.quad_nodes % 2 != 0)
    fail("/quad_nodes", "need an even node count >= 2");

  if (doc.contains("periodic")) {
    const auto& s = doc.at("periodic");
    require_object(s, "/periodic");
    reject_unknown_keys(s, "/periodic", {"tol", "max_periods"});
    cfg.periodic_tol = get_number(s, "/periodic", "tol", cfg.periodic_tol);
    cfg.periodic_max_periods =
        get_int(s, "/periodic", "max_periods", cfg.periodic_max_periods);
  }
  if (!(cfg.periodic_tol > 0.0)) fail("/periodic/tol", "tol must be > 0");
  if (cfg.periodic_max_periods < 1)
    fail("/periodic/max_periods", "max_periods must be >= 1");

  if (doc.contains("monotone")) {
    const auto& s = doc.at("monotone");
    require_object(s, "/monotone");
    reject_unknown_keys(s, "/monotone", {"tol", "max_iter"});
    cfg.monotone_tol = get_number(s, "/monotone", "tol", cfg.monotone_tol);
    cfg.monotone_max_iter =
        get_int(s, "/monotone", "max_iter", cfg.monotone_max_iter);
  }
  if (!(cfg.monotone_tol > 0.0)) fail("/monotone/tol", "tol must be > 0");
  if (cfg.monotone_max_iter < 1)
    fail("/monotone/max_iter", "max_iter must be >= 1");

  cfg.out_dir = get_string(doc, "", "out_dir", cfg.out_dir);
  if (cfg.out_dir.empty()) fail("/out_dir", "out_dir must not be empty");

  // Echo with every default materialized; a run is reproducible from this.
  cfg.resolved = ordered_json::object();
  if (cfg.preset) cfg.resolved["preset"] = std::string(preset_name(*cfg.preset));
  if (cfg.model) cfg.resolved["model"] = model_to_json(*cfg.model);
  cfg.resolved["grid_n"] = cfg.grid_n;
  cfg.resolved["stepper"] = ordered_json{
      {"dt", cfg.stepper.dt},
      {"t_end", cfg.stepper.t_end},
      {"scheme",
       cfg.stepper.scheme == Scheme::imex_be ? "imex_be" : "imex_cn"},
      {"record_every", cfg.stepper.record_every}};
  cfg.resolved["initial"] = initial_to_json(cfg.initial);
  cfg.resolved["quad_nodes"] = cfg.quad_nodes;
  cfg.resolved["periodic"] = ordered_json{
      {"tol", cfg.periodic_tol}, {"max_periods", cfg.periodic_max_periods}};
  cfg.resolved["monotone"] = ordered_json{{"tol", cfg.monotone_tol},
                                          {"max_iter", cfg.monotone_max_iter}};
  cfg.resolved["out_dir"] = cfg.out_dir;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config syntax error in " + path + ": " + e.what());
  }
  return parse_config(doc, path);
}

}  // namespace evodom
