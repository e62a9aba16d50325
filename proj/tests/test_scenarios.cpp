#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "foldosc/analysis.hpp"
#include "foldosc/integrator.hpp"
#include "foldosc/scenarios.hpp"
#include "foldosc/validate.hpp"

using namespace foldosc;

namespace {

SimSummary run_preset(const std::string& name) {
  const ScenarioPreset p = preset(name);
  const Trace trace = simulate(p.config);
  return summarize(trace, p.config.beam.beam_tg_c,
                   std::min(p.config.actuator_a.actuator_tg_c,
                            p.config.actuator_b.actuator_tg_c));
}

bool has_field(const std::vector<Violation>& vs, const std::string& field) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.field == field; });
}

}  // namespace

TEST_CASE("preset registry is stable") {
  const std::vector<std::string> expected = {"oscillator_forced_air", "contact_standing_air",
                                             "water_immersion", "zero_drift"};
  REQUIRE(preset_names() == expected);
  for (const auto& p : all_presets()) {
    CAPTURE(p.name);
    REQUIRE_FALSE(p.description.empty());
    REQUIRE(validate(p.config).empty());
  }
}

TEST_CASE("unknown preset names every available preset") {
  try {
    preset("does_not_exist");
    FAIL("expected UnknownPresetError");
  } catch (const UnknownPresetError& e) {
    const std::string msg = e.what();
    for (const auto& name : preset_names()) {
      REQUIRE(msg.find(name) != std::string::npos);
    }
  }
}

TEST_CASE("oscillator preset runs the measured snap sequence") {
  const SimSummary s = run_preset("oscillator_forced_air");
  REQUIRE(s.n_snap_events == 9);
  REQUIRE(s.n_full_cycles == 4);
  REQUIRE(s.half_cycle_fraction == 0.5);
  REQUIRE(s.mean_period_s.has_value());
  REQUIRE(s.stall_time_s.has_value());
  REQUIRE_FALSE(s.beam_overheat_flag);
  REQUIRE_FALSE(s.actuator_overheat_flag);
}

TEST_CASE("contact preset trips the overheat flag") {
  const SimSummary s = run_preset("contact_standing_air");
  REQUIRE(s.beam_overheat_flag);
  REQUIRE(s.actuator_overheat_flag);
}

TEST_CASE("water preset never snaps") {
  const ScenarioPreset p = preset("water_immersion");
  const Trace trace = simulate(p.config);
  REQUIRE(trace.events.empty());

  const SimSummary s = summarize(trace, p.config.beam.beam_tg_c, 60.0);
  REQUIRE(s.n_snap_events == 0);
  REQUIRE_FALSE(s.mean_period_s.has_value());
  REQUIRE_FALSE(s.beam_overheat_flag);

  // The bath holds both actuators below activation for the whole run.
  const double activation = p.config.actuator_a.activation_temp_c;
  REQUIRE(s.max_temp_a_c < activation);
  REQUIRE(s.max_temp_b_c < activation);
}

TEST_CASE("zero-drift preset keeps oscillating over the whole horizon") {
  const SimSummary s = run_preset("zero_drift");
  REQUIRE(s.n_snap_events >= 100);
  REQUIRE_FALSE(s.stall_time_s.has_value());
  REQUIRE_FALSE(s.beam_overheat_flag);
}

TEST_CASE("validate names each offending field") {
  SimConfig cfg = preset("oscillator_forced_air").config;
  REQUIRE(validate(cfg).empty());

  cfg.step_s = 0.0;
  cfg.record_stride = 0;
  cfg.actuator_a.activation_temp_c = cfg.environment.ambient_c - 1.0;
  cfg.actuator_b.thermal_capacitance_j_per_k = -0.2;
  cfg.beam.crit_stroke_b_m = 0.0;
  cfg.circuit.contact_heat_fraction = 1.5;

  const auto vs = validate(cfg);
  REQUIRE(has_field(vs, "sim.step_s"));
  REQUIRE(has_field(vs, "sim.record_stride"));
  REQUIRE(has_field(vs, "actuator_a.activation_temp_c"));
  REQUIRE(has_field(vs, "actuator_b.thermal_capacitance_j_per_k"));
  REQUIRE(has_field(vs, "beam.crit_stroke_b_m"));
  REQUIRE(has_field(vs, "circuit.contact_heat_fraction"));
  REQUIRE(vs.size() >= 6);

  for (const auto& v : vs) {
    REQUIRE_FALSE(v.to_string().empty());
    REQUIRE(v.to_string().find(v.field) == 0);
  }
}

TEST_CASE("validate enforces the water-cooling floor") {
  SimConfig cfg = preset("water_immersion").config;
  REQUIRE(validate(cfg).empty());

  cfg.environment.multiplier = 5.0;  // plenty for forced air, too weak for water
  const auto vs = validate(cfg);
  REQUIRE(has_field(vs, "environment.multiplier"));

  cfg.environment.mode = CoolingMode::ForcedAir;
  REQUIRE(validate(cfg).empty());

  cfg.environment.multiplier = 0.5;
  REQUIRE(has_field(validate(cfg), "environment.multiplier"));

  // Standing air ignores the multiplier entirely.
  cfg.environment.mode = CoolingMode::StandingAir;
  REQUIRE(validate(cfg).empty());
}

TEST_CASE("event tolerance must undercut the step") {
  SimConfig cfg = preset("oscillator_forced_air").config;
  cfg.event_tolerance_s = cfg.step_s;
  REQUIRE(has_field(validate(cfg), "sim.event_tolerance_s"));

  cfg.event_tolerance_s = cfg.step_s / 2.0;
  REQUIRE(validate(cfg).empty());
}
