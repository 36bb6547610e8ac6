#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "evodom/commands.hpp"
#include "evodom/config.hpp"
#include "evodom/errors.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string preset;
  std::string out;
};

void add_common(CLI::App* sub, CommonArgs& c) {
  sub->add_option("--config", c.config_path,
                  "Path to the JSON run configuration")
      ->required();
  sub->add_option("--preset", c.preset,
                  "Preset overriding the config file's preset "
                  "(example5_1 | example5_2 | example5_3)");
  sub->add_option("--out", c.out,
                  "Output directory overriding the config's out_dir");
}

evodom::RunConfig resolve(const CommonArgs& c) {
  std::ifstream in(c.config_path);
  if (!in)
    throw evodom::ConfigError("cannot open config file: " + c.config_path);
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw evodom::ConfigError("config syntax error in " + c.config_path +
                              ": " + e.what());
  }
  if (!c.preset.empty()) doc["preset"] = c.preset;  // the flag wins
  evodom::RunConfig cfg = evodom::parse_config(doc, c.config_path);
  if (!c.out.empty()) {
    cfg.out_dir = c.out;
    cfg.resolved["out_dir"] = c.out;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-species competition on a periodically evolving interval: "
      "persistence indexes, direct simulation, periodic attractors, and "
      "verified bracketing."};
  app.require_subcommand(1);

  CommonArgs common;
  evodom::SweepSpec sweep;
  evodom::VerifyArgs verify;

  CLI::App* s_indexes = app.add_subcommand(
      "indexes", "Reproduction indexes, diffusion thresholds, and the "
                 "predicted long-run regime");
  add_common(s_indexes, common);

  CLI::App* s_simulate = app.add_subcommand(
      "simulate", "Integrate the initial-value problem and write the "
                  "trajectory");
  add_common(s_simulate, common);

  CLI::App* s_periodic = app.add_subcommand(
      "periodic", "Periodic attractor by direct iteration plus the "
                  "bracketing construction, with agreement metrics");
  add_common(s_periodic, common);

  CLI::App* s_sweep = app.add_subcommand(
      "sweep", "Index table along one parameter axis");
  add_common(s_sweep, common);
  s_sweep->add_option("--axis", sweep.axis, "m_amplitude | d1 | d2")
      ->required();
  s_sweep->add_option("--from", sweep.from, "First parameter value")
      ->required();
  s_sweep->add_option("--to", sweep.to, "Last parameter value")->required();
  s_sweep->add_option("--steps", sweep.steps, "Number of rows (>= 2)")
      ->required();

  CLI::App* s_verify = app.add_subcommand(
      "verify", "Check a candidate bracketing pair against the defect "
                "inequalities, or emit a generated pair");
  add_common(s_verify, common);
  s_verify->add_option("--upper", verify.upper_path,
                       "CSV carrying the upper barrier pair");
  s_verify->add_option("--lower", verify.lower_path,
                       "CSV carrying the lower barrier pair");
  s_verify->add_option("--emit-candidates", verify.emit_dir,
                       "Write a generated candidate pair into this directory "
                       "instead of checking");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors count as configuration errors
  }

  try {
    const evodom::RunConfig cfg = resolve(common);
    if (s_indexes->parsed()) return evodom::cmd_indexes(cfg, std::cout);
    if (s_simulate->parsed()) return evodom::cmd_simulate(cfg, std::cout);
    if (s_periodic->parsed()) return evodom::cmd_periodic(cfg, std::cout);
    if (s_sweep->parsed()) return evodom::cmd_sweep(cfg, sweep, std::cout);
    if (s_verify->parsed()) return evodom::cmd_verify(cfg, verify, std::cout);
    return 2;
  } catch (const evodom::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const evodom::BlowUpError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
