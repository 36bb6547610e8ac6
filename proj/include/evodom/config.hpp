#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "evodom/dynamics.hpp"
#include "evodom/model_params.hpp"
#include "evodom/presets.hpp"
#include "evodom/stepper.hpp"

namespace evodom {

// Fully resolved run configuration.  Parsing is strict: unknown keys are
// rejected with their JSON-pointer path, as are type mismatches and
// out-of-range values (all as ConfigError, CLI exit code 2).
struct RunConfig {
  std::optional<Preset> preset;
  std::optional<ModelParams> model;  // preset expanded, overrides applied

  int grid_n = 199;
  StepperConfig stepper;
  InitialCondition initial = InitialCondition::sine_bump(5.0);
  int quad_nodes = 4096;

  double periodic_tol = 1e-6;
  int periodic_max_periods = 200;
  double monotone_tol = 1e-6;
  int monotone_max_iter = 1200;

  std::string out_dir = "out";

  // Echo of the configuration with every default filled in; lands in
  // meta.json so runs are reproducible from their outputs alone.
  nlohmann::ordered_json resolved;

  // Model access that fails loudly when neither preset nor model was given.
  const ModelParams& params() const;
};

// Parse from a file (syntax errors carry the parser's byte position,
// semantic errors the JSON-pointer path).
RunConfig load_config(const std::string& path);

// Parse an already-loaded document; `where` names the source in messages.
RunConfig parse_config(const nlohmann::ordered_json& doc,
                       const std::string& where = "<config>");

}  // namespace evodom
