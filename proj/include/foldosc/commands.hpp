#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "foldosc/analysis.hpp"
#include "foldosc/calibration.hpp"
#include "foldosc/config_io.hpp"
#include "foldosc/integrator.hpp"
#include "foldosc/scenarios.hpp"
#include "foldosc/svg.hpp"
#include "foldosc/sweep.hpp"
#include "foldosc/trace_io.hpp"
#include "foldosc/version.hpp"

namespace foldosc {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitDivergence = 2;
inline constexpr int kExitIoFailure = 3;
inline constexpr int kExitNoOscillation = 4;

struct ScenarioSource {
  std::string config_path;  // exactly one of the two must be set
  std::string preset_name;
  std::optional<double> horizon_override_s;
  std::optional<double> step_override_s;
};

namespace detail {

// Loads the scenario without validating it; validation stays with the caller
// so `validate` can report violations instead of failing.
inline int load_scenario(const ScenarioSource& src, SimConfig& cfg, std::string& label,
                         std::ostream& err) {
  const bool have_file = !src.config_path.empty();
  const bool have_preset = !src.preset_name.empty();
  if (have_file == have_preset) {
    err << "exactly one of --config or --preset is required\n";
    return kExitInvalidInput;
  }
  if (have_preset) {
    try {
      cfg = preset(src.preset_name).config;
      label = "preset:" + src.preset_name;
    } catch (const UnknownPresetError& e) {
      err << e.what() << "\n";
      return kExitInvalidInput;
    }
  } else {
    const auto text = read_text_file(src.config_path);
    if (!text) {
      err << "cannot open config file: " << src.config_path << "\n";
      return kExitIoFailure;
    }
    try {
      cfg = parse_config(*text, src.config_path);
      label = src.config_path;
    } catch (const ConfigParseError& e) {
      err << e.what() << "\n";
      return kExitInvalidInput;
    }
  }
  if (src.horizon_override_s) cfg.horizon_s = *src.horizon_override_s;
  if (src.step_override_s) cfg.step_s = *src.step_override_s;
  return kExitOk;
}

inline int report_violations(const SimConfig& cfg, std::ostream& err) {
  const auto violations = validate(cfg);
  if (violations.empty()) return kExitOk;
  err << "invalid config:\n";
  for (const auto& v : violations) err << "  " << v.to_string() << "\n";
  return kExitInvalidInput;
}

inline bool write_file(const std::filesystem::path& path, const std::string& content,
                       std::ostream& err) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    err << "cannot write " << path.string() << "\n";
    return false;
  }
  out << content;
  out.flush();
  if (!out) {
    err << "write failed for " << path.string() << "\n";
    return false;
  }
  return true;
}

inline bool ensure_dir(const std::filesystem::path& dir, std::ostream& err) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    err << "cannot create output directory " << dir.string() << ": " << ec.message() << "\n";
    return false;
  }
  return true;
}

inline bool write_manifest(const std::filesystem::path& dir, const std::string& command,
                           const std::string& input, const SimConfig& cfg,
                           const std::vector<std::string>& files, long long wall_ms,
                           std::ostream& err) {
  nlohmann::json j;
  j["command"] = command;
  j["input"] = input;
  j["output_dir"] = dir.string();
  j["config_hash"] = config_hash_hex(cfg);
  j["tool_version"] = kVersion;
  j["files"] = files;
  j["wall_ms"] = wall_ms;
  return write_file(dir / "manifest.json", j.dump(2) + "\n", err);
}

}  // namespace detail

struct SimulateOptions {
  ScenarioSource source;
  std::string out_dir = ".";
};

inline int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  SimConfig cfg;
  std::string label;
  if (const int rc = detail::load_scenario(opts.source, cfg, label, err); rc != kExitOk) return rc;
  if (const int rc = detail::report_violations(cfg, err); rc != kExitOk) return rc;

  const auto t_start = std::chrono::steady_clock::now();
  Trace trace;
  try {
    trace = simulate(cfg);
  } catch (const SimulationError& e) {
    err << "simulation failed: " << e.what() << "\n";
    return kExitDivergence;
  }
  const SimSummary summary =
      summarize(trace, cfg.beam.beam_tg_c,
                std::min(cfg.actuator_a.actuator_tg_c, cfg.actuator_b.actuator_tg_c));
  const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t_start)
                           .count();

  const std::filesystem::path dir(opts.out_dir);
  if (!detail::ensure_dir(dir, err)) return kExitIoFailure;
  if (!detail::write_file(dir / "trace.csv", trace_csv(trace), err)) return kExitIoFailure;
  if (!detail::write_file(dir / "events.csv", events_csv(trace), err)) return kExitIoFailure;
  if (!detail::write_file(dir / "summary.txt", summary_txt(summary), err)) return kExitIoFailure;
  if (!detail::write_file(dir / "plot.svg", plot_svg(trace, cfg), err)) return kExitIoFailure;
  if (!detail::write_manifest(dir, "simulate", label, cfg,
                              {"trace.csv", "events.csv", "summary.txt", "plot.svg"}, wall_ms,
                              err)) {
    return kExitIoFailure;
  }

  out << "simulated " << label << ": " << summary.n_snap_events << " snap events, "
      << format_number(summary.total_cycles(), 3) << " cycles";
  if (summary.mean_period_s) out << ", mean period " << format_number(*summary.mean_period_s, 4) << " s";
  if (summary.stall_time_s) out << ", stalled at " << format_number(*summary.stall_time_s, 4) << " s";
  out << "\n";
  for (const char* f : {"trace.csv", "events.csv", "summary.txt", "plot.svg", "manifest.json"}) {
    out << "wrote " << (dir / f).string() << "\n";
  }
  return kExitOk;
}

struct CalibrateOptions {
  ScenarioSource source;
  std::string targets_path;  // optional; defaults to the measured timeline
  std::string bounds_path;   // required
  std::string out_dir = ".";
  OptimizerSettings settings;
};

inline int cmd_calibrate(const CalibrateOptions& opts, std::ostream& out, std::ostream& err) {
  SimConfig cfg;
  std::string label;
  if (const int rc = detail::load_scenario(opts.source, cfg, label, err); rc != kExitOk) return rc;
  if (const int rc = detail::report_violations(cfg, err); rc != kExitOk) return rc;

  CalibrationTargets targets;
  if (!opts.targets_path.empty()) {
    const auto text = read_text_file(opts.targets_path);
    if (!text) {
      err << "cannot open targets file: " << opts.targets_path << "\n";
      return kExitIoFailure;
    }
    try {
      targets = parse_targets(*text, opts.targets_path);
    } catch (const ConfigParseError& e) {
      err << e.what() << "\n";
      return kExitInvalidInput;
    }
  }

  if (opts.bounds_path.empty()) {
    err << "calibrate requires --bounds\n";
    return kExitInvalidInput;
  }
  const auto bounds_text = read_text_file(opts.bounds_path);
  if (!bounds_text) {
    err << "cannot open bounds file: " << opts.bounds_path << "\n";
    return kExitIoFailure;
  }
  ParameterBounds bounds;
  try {
    bounds = parse_bounds(*bounds_text, opts.bounds_path);
  } catch (const ConfigParseError& e) {
    err << e.what() << "\n";
    return kExitInvalidInput;
  }
  if (bounds.empty()) {
    err << "bounds file " << opts.bounds_path << " defines no parameters\n";
    return kExitInvalidInput;
  }

  const auto t_start = std::chrono::steady_clock::now();
  const CalibrationResult result = calibrate(targets, bounds, cfg, opts.settings);
  const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t_start)
                           .count();

  const SimConfig best_cfg = overlay_params(cfg, bounds, result.best_values);
  const ObjectiveBreakdown best = evaluate_objective(result.best_values, bounds, targets, cfg);

  std::string report;
  report += "best_loss=" + format_number(result.best_loss) + "\n";
  report += "evaluations=" + std::to_string(result.evals) + "\n";
  report += "oscillating=" + std::string(result.found_oscillation ? "true" : "false") + "\n";
  for (size_t i = 0; i < bounds.size(); ++i) {
    report += "param_" + bounds[i].name + "=" + format_number(result.best_values[i]) + "\n";
  }
  auto opt = [](const std::optional<double>& v) {
    return v ? format_number(*v) : std::string("none");
  };
  report += "target_first_snap_s=" + format_number(targets.first_snap_s) +
            " value=" + opt(best.first_snap_s) + "\n";
  report += "target_first_snapback_s=" + format_number(targets.first_snapback_s) +
            " value=" + opt(best.first_snapback_s) + "\n";
  report += "target_mean_period_s=" + format_number(targets.mean_period_s) +
            " value=" + opt(best.mean_period_s) + "\n";
  report += "target_total_cycles=" + format_number(targets.total_cycles) +
            " value=" + opt(best.total_cycles) + "\n";
  report += "target_stall_time_s=" + format_number(targets.stall_time_s) +
            " value=" + opt(best.stall_time_s) + "\n";

  std::string history = "eval,restart,loss,best_loss";
  for (const auto& b : bounds) history += "," + b.name;
  history += "\n";
  for (const auto& h : result.history) {
    history += std::to_string(h.eval) + "," + std::to_string(h.restart) + "," +
               format_number(h.loss) + "," + format_number(h.best_loss);
    for (const double v : h.values) history += "," + format_number(v);
    history += "\n";
  }

  const std::filesystem::path dir(opts.out_dir);
  if (!detail::ensure_dir(dir, err)) return kExitIoFailure;
  if (!detail::write_file(dir / "best_params.txt", serialize_config(best_cfg), err)) {
    return kExitIoFailure;
  }
  if (!detail::write_file(dir / "fit_report.txt", report, err)) return kExitIoFailure;
  if (!detail::write_file(dir / "history.csv", history, err)) return kExitIoFailure;
  if (!detail::write_manifest(dir, "calibrate", label, best_cfg,
                              {"best_params.txt", "fit_report.txt", "history.csv"}, wall_ms, err)) {
    return kExitIoFailure;
  }

  out << "calibrated " << bounds.size() << " parameter(s) in " << result.evals
      << " evaluations, best loss " << format_number(result.best_loss, 4) << "\n";
  for (const char* f : {"best_params.txt", "fit_report.txt", "history.csv", "manifest.json"}) {
    out << "wrote " << (dir / f).string() << "\n";
  }
  if (!result.found_oscillation) {
    err << "no evaluated candidate oscillated; best-so-far written anyway\n";
    return kExitNoOscillation;
  }
  return kExitOk;
}

struct SweepOptions {
  ScenarioSource source;
  std::string param;
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  std::string out_dir = ".";
};

inline int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  SimConfig cfg;
  std::string label;
  if (const int rc = detail::load_scenario(opts.source, cfg, label, err); rc != kExitOk) return rc;
  if (const int rc = detail::report_violations(cfg, err); rc != kExitOk) return rc;
  if (opts.count < 1) {
    err << "sweep requires --count >= 1\n";
    return kExitInvalidInput;
  }

  const auto t_start = std::chrono::steady_clock::now();
  std::vector<SweepPoint> points;
  try {
    points = run_sweep(cfg, opts.param, opts.min, opts.max, opts.count);
  } catch (const UnknownParameterError& e) {
    err << e.what() << "\n";
    return kExitInvalidInput;
  }
  const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t_start)
                           .count();

  const std::filesystem::path dir(opts.out_dir);
  if (!detail::ensure_dir(dir, err)) return kExitIoFailure;
  if (!detail::write_file(dir / "sweep.csv", sweep_csv(opts.param, points), err)) {
    return kExitIoFailure;
  }
  if (!detail::write_manifest(dir, "sweep", label, cfg, {"sweep.csv"}, wall_ms, err)) {
    return kExitIoFailure;
  }

  int oscillating = 0;
  for (const auto& p : points) {
    if (p.summary && p.summary->n_snap_events >= 2) ++oscillating;
  }
  out << "swept " << opts.param << " over " << points.size() << " point(s), " << oscillating
      << " oscillating\n";
  out << "wrote " << (dir / "sweep.csv").string() << "\n";
  out << "wrote " << (dir / "manifest.json").string() << "\n";
  return kExitOk;
}

struct ValidateOptions {
  ScenarioSource source;
};

inline int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
  SimConfig cfg;
  std::string label;
  if (const int rc = detail::load_scenario(opts.source, cfg, label, err); rc != kExitOk) return rc;
  const auto violations = validate(cfg);
  if (violations.empty()) {
    out << label << ": valid\n";
    return kExitOk;
  }
  err << label << ": " << violations.size() << " violation(s)\n";
  for (const auto& v : violations) err << "  " << v.to_string() << "\n";
  return kExitInvalidInput;
}

inline int cmd_presets(std::ostream& out) {
  for (const auto& p : all_presets()) {
    out << p.name << " [" << outcome_name(p.expected) << "]\n    " << p.description << "\n";
  }
  return kExitOk;
}

}  // namespace foldosc
