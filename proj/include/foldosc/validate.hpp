#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "foldosc/config.hpp"

namespace foldosc {

struct Violation {
  std::string field;
  std::string rule;

  std::string to_string() const { return field + ": " + rule; }
};

namespace detail {

inline std::string num_str(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

// Collects every rule breach instead of stopping at the first one; an empty
// result means the config is runnable.
inline std::vector<Violation> validate(const SimConfig& cfg) {
  std::vector<Violation> out;
  auto check = [&](bool ok, const std::string& field, const std::string& rule) {
    if (!ok) out.push_back({field, rule});
  };
  auto positive = [&](double v, const std::string& field) {
    check(std::isfinite(v) && v > 0.0, field, "must be > 0 (got " + detail::num_str(v) + ")");
  };
  auto non_negative = [&](double v, const std::string& field) {
    check(std::isfinite(v) && v >= 0.0, field, "must be >= 0 (got " + detail::num_str(v) + ")");
  };

  positive(cfg.step_s, "sim.step_s");
  positive(cfg.horizon_s, "sim.horizon_s");
  positive(cfg.event_tolerance_s, "sim.event_tolerance_s");
  if (cfg.event_tolerance_s > 0.0 && cfg.step_s > 0.0) {
    check(cfg.event_tolerance_s < cfg.step_s, "sim.event_tolerance_s",
          "must be smaller than step_s");
  }
  check(cfg.record_stride >= 1, "sim.record_stride", "must be >= 1");

  check(std::isfinite(cfg.environment.ambient_c), "environment.ambient_c", "must be finite");
  if (cfg.environment.mode != CoolingMode::StandingAir) {
    check(std::isfinite(cfg.environment.multiplier) && cfg.environment.multiplier >= 1.0,
          "environment.multiplier", "must be >= 1 (got " + detail::num_str(cfg.environment.multiplier) + ")");
  }
  if (cfg.environment.mode == CoolingMode::Water) {
    check(cfg.environment.multiplier >= kMinWaterMultiplier, "environment.multiplier",
          "water cooling must be at least " + detail::num_str(kMinWaterMultiplier) +
              " (10x the default forced-air multiplier)");
  }

  auto check_actuator = [&](const ActuatorParams& act, const std::string& prefix) {
    positive(act.resistance_ohm, prefix + ".resistance_ohm");
    positive(act.thermal_capacitance_j_per_k, prefix + ".thermal_capacitance_j_per_k");
    positive(act.conv_conductance_w_per_k, prefix + ".conv_conductance_w_per_k");
    positive(act.activation_temp_c, prefix + ".activation_temp_c");
    check(act.activation_temp_c >= cfg.environment.ambient_c, prefix + ".activation_temp_c",
          "must be >= environment.ambient_c, otherwise the actuator contracts at rest");
    positive(act.contraction_coeff_m_per_k, prefix + ".contraction_coeff_m_per_k");
    positive(act.max_stroke_m, prefix + ".max_stroke_m");
    non_negative(act.drift_per_cycle_m, prefix + ".drift_per_cycle_m");
    positive(act.actuator_tg_c, prefix + ".actuator_tg_c");
  };
  check_actuator(cfg.actuator_a, "actuator_a");
  check_actuator(cfg.actuator_b, "actuator_b");

  positive(cfg.beam.crit_stroke_a_m, "beam.crit_stroke_a_m");
  positive(cfg.beam.crit_stroke_b_m, "beam.crit_stroke_b_m");
  positive(cfg.beam.beam_tg_c, "beam.beam_tg_c");

  non_negative(cfg.circuit.source_current_a, "circuit.source_current_a");
  non_negative(cfg.circuit.contact_resistance_a_ohm, "circuit.contact_resistance_a_ohm");
  non_negative(cfg.circuit.contact_resistance_b_ohm, "circuit.contact_resistance_b_ohm");
  check(std::isfinite(cfg.circuit.contact_heat_fraction) &&
            cfg.circuit.contact_heat_fraction >= 0.0 && cfg.circuit.contact_heat_fraction <= 1.0,
        "circuit.contact_heat_fraction",
        "must lie in [0, 1] (got " + detail::num_str(cfg.circuit.contact_heat_fraction) + ")");

  if (cfg.initial_temp_a_c) {
    check(std::isfinite(*cfg.initial_temp_a_c), "initial.temp_a_c", "must be finite");
  }
  if (cfg.initial_temp_b_c) {
    check(std::isfinite(*cfg.initial_temp_b_c), "initial.temp_b_c", "must be finite");
  }
  return out;
}

}  // namespace foldosc
