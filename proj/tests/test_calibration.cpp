#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <limits>

#include "foldosc/calibration.hpp"
#include "foldosc/scenarios.hpp"

using namespace foldosc;

namespace {

// Targets computed from the run itself; the objective must score them as an
// exact hit.
CalibrationTargets self_targets(const SimConfig& cfg) {
  const Trace trace = simulate(cfg);
  const SimSummary s = summarize(trace, cfg.beam.beam_tg_c,
                                 std::min(cfg.actuator_a.actuator_tg_c,
                                          cfg.actuator_b.actuator_tg_c));
  REQUIRE(s.n_snap_events >= 2);
  REQUIRE(s.mean_period_s.has_value());
  REQUIRE(s.stall_time_s.has_value());
  CalibrationTargets t;
  t.first_snap_s = trace.events[0].time_s;
  t.first_snapback_s = trace.events[1].time_s;
  t.mean_period_s = *s.mean_period_s;
  t.total_cycles = s.total_cycles();
  t.stall_time_s = *s.stall_time_s;
  return t;
}

}  // namespace

TEST_CASE("overlay_params writes through the parameter table") {
  SimConfig base = preset("oscillator_forced_air").config;
  ParameterBounds bounds = {{"crit_stroke_b_m", 1e-3, 5e-3},
                            {"drift_per_cycle_m", 0.0, 1e-3},
                            {"thermal_capacitance_j_per_k", 0.05, 1.0}};
  SimConfig out = overlay_params(base, bounds, {4.2e-3, 2.5e-4, 0.31});
  REQUIRE(out.beam.crit_stroke_b_m == 4.2e-3);
  REQUIRE(out.actuator_a.drift_per_cycle_m == 2.5e-4);
  REQUIRE(out.actuator_b.drift_per_cycle_m == 2.5e-4);
  REQUIRE(out.actuator_a.thermal_capacitance_j_per_k == 0.31);
  REQUIRE(out.actuator_b.thermal_capacitance_j_per_k == 0.31);
  REQUIRE(out.beam.crit_stroke_a_m == base.beam.crit_stroke_a_m);

  REQUIRE_THROWS_AS(overlay_params(base, bounds, {1.0, 2.0}), std::invalid_argument);
  ParameterBounds bad = {{"source_current_a", 0.1, 1.0}};
  REQUIRE_THROWS_AS(overlay_params(base, bad, {0.5}), std::invalid_argument);
}

TEST_CASE("objective scores an exact parameter hit as zero loss") {
  const SimConfig base = preset("oscillator_forced_air").config;
  const CalibrationTargets targets = self_targets(base);

  ParameterBounds bounds = {{"crit_stroke_a_m", 1e-3, 5e-3},
                            {"crit_stroke_b_m", 1e-3, 5e-3}};
  const ObjectiveBreakdown bd = evaluate_objective(
      {base.beam.crit_stroke_a_m, base.beam.crit_stroke_b_m}, bounds, targets, base);
  REQUIRE_FALSE(bd.failed);
  REQUIRE(bd.oscillating);
  REQUIRE(bd.loss < 1e-12);
}

TEST_CASE("objective weights scale their residual terms linearly") {
  const SimConfig base = preset("oscillator_forced_air").config;
  CalibrationTargets targets = self_targets(base);
  targets.mean_period_s *= 1.1;  // the only nonzero residual

  ParameterBounds bounds = {{"crit_stroke_a_m", 1e-3, 5e-3}};
  const std::vector<double> at = {base.beam.crit_stroke_a_m};
  const double base_loss = evaluate_objective(at, bounds, targets, base).loss;
  REQUIRE(base_loss > 0.0);

  targets.w_mean_period = 2.0;
  const double doubled = evaluate_objective(at, bounds, targets, base).loss;
  REQUIRE(doubled == Catch::Approx(2.0 * base_loss).epsilon(1e-12));
}

TEST_CASE("zero-event candidates cost more than any full miss") {
  const SimConfig base = preset("oscillator_forced_air").config;
  const CalibrationTargets targets = self_targets(base);

  // Too little current: the actuator never reaches activation temperature.
  SimConfig cold = base;
  cold.circuit.source_current_a = 0.1;
  const ObjectiveBreakdown far = evaluate_objective({}, {}, targets, cold);
  REQUIRE(far.n_events == 0);
  REQUIRE_FALSE(far.oscillating);
  REQUIRE(far.loss == Catch::Approx(2.0 * kZeroEventPenalty));

  // Warm but short of the snap threshold: penalized less than the cold run.
  SimConfig warm = base;
  warm.circuit.source_current_a = 0.42;
  const ObjectiveBreakdown near = evaluate_objective({}, {}, targets, warm);
  REQUIRE(near.n_events == 0);
  REQUIRE(near.loss >= kZeroEventPenalty);
  REQUIRE(near.loss < far.loss);

  // Five simultaneous 100% misses with unit weights cost 5; the penalty has
  // to dominate that so the optimizer always prefers an oscillating run.
  REQUIRE(near.loss > 5.0);
}

TEST_CASE("objective reports infinite loss on rejected candidates") {
  const SimConfig base = preset("oscillator_forced_air").config;
  const CalibrationTargets targets = self_targets(base);
  ParameterBounds bounds = {{"thermal_capacitance_j_per_k", 1e-9, 1.0}};
  const ObjectiveBreakdown bd = evaluate_objective({1e-9}, bounds, targets, base);
  REQUIRE(bd.failed);
  REQUIRE(std::isinf(bd.loss));
}

TEST_CASE("calibrate rejects malformed bounds") {
  const SimConfig base = preset("oscillator_forced_air").config;
  const CalibrationTargets targets;
  REQUIRE_THROWS_AS(calibrate(targets, {}, base), std::invalid_argument);
  REQUIRE_THROWS_AS(calibrate(targets, {{"no_such_param", 0.0, 1.0}}, base),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(calibrate(targets, {{"source_current_a", 0.1, 1.0}}, base),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(calibrate(targets, {{"crit_stroke_a_m", 2.0, 1.0}}, base),
                    std::invalid_argument);
}

TEST_CASE("fully pinned bounds settle in a single evaluation") {
  const SimConfig base = preset("oscillator_forced_air").config;
  const CalibrationTargets targets = self_targets(base);
  ParameterBounds bounds = {
      {"crit_stroke_a_m", base.beam.crit_stroke_a_m, base.beam.crit_stroke_a_m},
      {"drift_per_cycle_m", base.actuator_a.drift_per_cycle_m,
       base.actuator_a.drift_per_cycle_m}};
  const CalibrationResult res = calibrate(targets, bounds, base);
  REQUIRE(res.evals == 1);
  REQUIRE(res.history.size() == 1);
  REQUIRE(res.best_values[0] == base.beam.crit_stroke_a_m);
  REQUIRE(res.best_values[1] == base.actuator_a.drift_per_cycle_m);
  REQUIRE(res.best_loss < 1e-12);
  REQUIRE(res.found_oscillation);
}

TEST_CASE("calibrate honours its budget and tracks the running best") {
  const SimConfig base = preset("oscillator_forced_air").config;
  const CalibrationTargets targets = self_targets(base);
  ParameterBounds bounds = {{"crit_stroke_b_m", 2.8e-3, 4.4e-3},
                            {"drift_per_cycle_m", 1e-4, 6e-4}};

  OptimizerSettings settings;
  settings.max_evals = 37;
  settings.restarts = 3;
  settings.seed = 99;
  const CalibrationResult res = calibrate(targets, bounds, base, settings);

  REQUIRE(res.evals <= 37);
  REQUIRE(res.history.size() == static_cast<size_t>(res.evals));

  double best = std::numeric_limits<double>::infinity();
  long long expected_eval = 1;
  for (const auto& h : res.history) {
    REQUIRE(h.eval == expected_eval++);
    best = std::min(best, h.loss);
    REQUIRE(h.best_loss == best);
    REQUIRE(h.values.size() == bounds.size());
    for (size_t i = 0; i < bounds.size(); ++i) {
      REQUIRE(h.values[i] >= bounds[i].lower);
      REQUIRE(h.values[i] <= bounds[i].upper);
    }
  }
  REQUIRE(res.best_loss == best);

  // Restart 0 explores from the base config's own parameter values.
  REQUIRE(res.history[0].restart == 0);
  REQUIRE(res.history[0].values[0] == Catch::Approx(base.beam.crit_stroke_b_m));
  REQUIRE(res.history[0].values[1] ==
          Catch::Approx(base.actuator_a.drift_per_cycle_m));
}

TEST_CASE("calibrate is deterministic for a fixed seed") {
  const SimConfig base = preset("oscillator_forced_air").config;
  const CalibrationTargets targets = self_targets(base);
  ParameterBounds bounds = {{"crit_stroke_b_m", 2.8e-3, 4.4e-3},
                            {"drift_per_cycle_m", 1e-4, 6e-4}};

  OptimizerSettings settings;
  settings.max_evals = 120;
  settings.restarts = 2;
  settings.seed = 4242;

  const CalibrationResult r1 = calibrate(targets, bounds, base, settings);
  const CalibrationResult r2 = calibrate(targets, bounds, base, settings);
  REQUIRE(r1.evals == r2.evals);
  REQUIRE(r1.best_loss == r2.best_loss);
  REQUIRE(r1.history.size() == r2.history.size());
  for (size_t i = 0; i < r1.history.size(); ++i) {
    REQUIRE(r1.history[i].loss == r2.history[i].loss);
    REQUIRE(r1.history[i].restart == r2.history[i].restart);
    REQUIRE(std::memcmp(r1.history[i].values.data(), r2.history[i].values.data(),
                        r1.history[i].values.size() * sizeof(double)) == 0);
  }
}

TEST_CASE("two-parameter fit recovers the generating values") {
  const SimConfig truth = preset("oscillator_forced_air").config;
  const CalibrationTargets targets = self_targets(truth);

  SimConfig guess = truth;
  guess.beam.crit_stroke_b_m = 3.0e-3;
  guess.actuator_a.drift_per_cycle_m = 5.0e-4;
  guess.actuator_b.drift_per_cycle_m = 5.0e-4;

  ParameterBounds bounds = {{"crit_stroke_b_m", 2.8e-3, 4.4e-3},
                            {"drift_per_cycle_m", 1e-4, 6e-4}};

  OptimizerSettings settings;
  settings.max_evals = 1600;
  settings.restarts = 8;
  settings.seed = 7;
  const CalibrationResult res = calibrate(targets, bounds, guess, settings);

  REQUIRE(res.found_oscillation);
  REQUIRE(res.best_loss < 1e-3);
  REQUIRE(res.best_values[0] ==
          Catch::Approx(truth.beam.crit_stroke_b_m).epsilon(0.05));
  REQUIRE(res.best_values[1] ==
          Catch::Approx(truth.actuator_a.drift_per_cycle_m).epsilon(0.05));
}

TEST_CASE("calibrate reports when no candidate oscillates") {
  const SimConfig base = preset("oscillator_forced_air").config;
  const CalibrationTargets targets = self_targets(base);
  ParameterBounds bounds = {{"activation_temp_c", 500.0, 600.0}};

  OptimizerSettings settings;
  settings.max_evals = 40;
  settings.restarts = 2;
  const CalibrationResult res = calibrate(targets, bounds, base, settings);
  REQUIRE_FALSE(res.found_oscillation);
  REQUIRE(res.best_loss >= kZeroEventPenalty);
}
