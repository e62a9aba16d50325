#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "foldosc/commands.hpp"
#include "foldosc/version.hpp"

namespace {

void add_source_flags(CLI::App* cmd, foldosc::ScenarioSource& src) {
  auto* cfg = cmd->add_option("--config", src.config_path, "path to a scenario config file");
  auto* preset = cmd->add_option("--preset", src.preset_name, "name of a built-in scenario");
  cfg->excludes(preset);
  preset->excludes(cfg);
  cmd->add_option("--horizon", src.horizon_override_s, "override sim horizon [s]");
  cmd->add_option("--step", src.step_override_s, "override integrator step [s]");
}

void add_out_flag(CLI::App* cmd, std::string& out_dir) {
  cmd->add_option("--out", out_dir, "output directory (default: FOLDOSC_OUT or .)")
      ->envname("FOLDOSC_OUT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"foldosc: lumped-parameter simulator for a foldable relaxation oscillator"};
  app.set_version_flag("--version", foldosc::kVersion);
  app.require_subcommand(1);

  foldosc::SimulateOptions sim_opts;
  auto* sim = app.add_subcommand("simulate", "run one scenario and write trace, summary and plot");
  add_source_flags(sim, sim_opts.source);
  add_out_flag(sim, sim_opts.out_dir);

  foldosc::CalibrateOptions cal_opts;
  auto* cal = app.add_subcommand("calibrate", "fit bounded parameters to timeline targets");
  add_source_flags(cal, cal_opts.source);
  add_out_flag(cal, cal_opts.out_dir);
  cal->add_option("--targets", cal_opts.targets_path,
                  "targets file (defaults to the measured snap timeline)");
  cal->add_option("--bounds", cal_opts.bounds_path, "bounds file naming the fitted parameters");
  cal->add_option("--seed", cal_opts.settings.seed, "restart RNG seed");
  cal->add_option("--max-evals", cal_opts.settings.max_evals, "total objective evaluation budget");
  cal->add_option("--restarts", cal_opts.settings.restarts, "number of optimizer restarts");

  foldosc::SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "grid a parameter and record the response");
  add_source_flags(sweep, sweep_opts.source);
  add_out_flag(sweep, sweep_opts.out_dir);
  sweep->add_option("--param", sweep_opts.param, "parameter name to sweep");
  sweep->add_option("--min", sweep_opts.min, "lowest grid value");
  sweep->add_option("--max", sweep_opts.max, "highest grid value");
  sweep->add_option("--count", sweep_opts.count, "number of grid points");

  foldosc::ValidateOptions val_opts;
  auto* val = app.add_subcommand("validate", "check a scenario config and list violations");
  add_source_flags(val, val_opts.source);

  auto* presets = app.add_subcommand("presets", "list the built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (sim->parsed()) return foldosc::cmd_simulate(sim_opts, std::cout, std::cerr);
  if (cal->parsed()) return foldosc::cmd_calibrate(cal_opts, std::cout, std::cerr);
  if (sweep->parsed()) return foldosc::cmd_sweep(sweep_opts, std::cout, std::cerr);
  if (val->parsed()) return foldosc::cmd_validate(val_opts, std::cout, std::cerr);
  if (presets->parsed()) return foldosc::cmd_presets(std::cout);
  return foldosc::kExitInvalidInput;
}
