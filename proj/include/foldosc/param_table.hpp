#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "foldosc/config.hpp"

namespace foldosc {

// Named scalar knobs exposed to calibration and sweeps. The two actuators are
// treated as a matched pair: shared entries write both sides, and per-side
// asymmetry enters only through the contact resistances and critical strokes.
struct ParamAccessor {
  const char* name;
  bool calibratable;  // allowed in a calibration bounds file
  double (*get)(const SimConfig&);
  void (*set)(SimConfig&, double);
};

inline const std::vector<ParamAccessor>& param_table() {
  static const std::vector<ParamAccessor> table = {
      {"thermal_capacitance_j_per_k", true,
       [](const SimConfig& c) { return c.actuator_a.thermal_capacitance_j_per_k; },
       [](SimConfig& c, double v) {
         c.actuator_a.thermal_capacitance_j_per_k = v;
         c.actuator_b.thermal_capacitance_j_per_k = v;
       }},
      {"conv_conductance_w_per_k", true,
       [](const SimConfig& c) { return c.actuator_a.conv_conductance_w_per_k; },
       [](SimConfig& c, double v) {
         c.actuator_a.conv_conductance_w_per_k = v;
         c.actuator_b.conv_conductance_w_per_k = v;
       }},
      {"contraction_coeff_m_per_k", true,
       [](const SimConfig& c) { return c.actuator_a.contraction_coeff_m_per_k; },
       [](SimConfig& c, double v) {
         c.actuator_a.contraction_coeff_m_per_k = v;
         c.actuator_b.contraction_coeff_m_per_k = v;
       }},
      {"activation_temp_c", true,
       [](const SimConfig& c) { return c.actuator_a.activation_temp_c; },
       [](SimConfig& c, double v) {
         c.actuator_a.activation_temp_c = v;
         c.actuator_b.activation_temp_c = v;
       }},
      {"drift_per_cycle_m", true,
       [](const SimConfig& c) { return c.actuator_a.drift_per_cycle_m; },
       [](SimConfig& c, double v) {
         c.actuator_a.drift_per_cycle_m = v;
         c.actuator_b.drift_per_cycle_m = v;
       }},
      {"crit_stroke_a_m", true,
       [](const SimConfig& c) { return c.beam.crit_stroke_a_m; },
       [](SimConfig& c, double v) { c.beam.crit_stroke_a_m = v; }},
      {"crit_stroke_b_m", true,
       [](const SimConfig& c) { return c.beam.crit_stroke_b_m; },
       [](SimConfig& c, double v) { c.beam.crit_stroke_b_m = v; }},
      {"contact_resistance_a_ohm", true,
       [](const SimConfig& c) { return c.circuit.contact_resistance_a_ohm; },
       [](SimConfig& c, double v) { c.circuit.contact_resistance_a_ohm = v; }},
      {"contact_resistance_b_ohm", true,
       [](const SimConfig& c) { return c.circuit.contact_resistance_b_ohm; },
       [](SimConfig& c, double v) { c.circuit.contact_resistance_b_ohm = v; }},
      {"source_current_a", false,
       [](const SimConfig& c) { return c.circuit.source_current_a; },
       [](SimConfig& c, double v) { c.circuit.source_current_a = v; }},
      {"contact_heat_fraction", false,
       [](const SimConfig& c) { return c.circuit.contact_heat_fraction; },
       [](SimConfig& c, double v) { c.circuit.contact_heat_fraction = v; }},
      {"cooling_multiplier", false,
       [](const SimConfig& c) { return c.environment.multiplier; },
       [](SimConfig& c, double v) { c.environment.multiplier = v; }},
      {"ambient_c", false,
       [](const SimConfig& c) { return c.environment.ambient_c; },
       [](SimConfig& c, double v) { c.environment.ambient_c = v; }},
      {"resistance_ohm", false,
       [](const SimConfig& c) { return c.actuator_a.resistance_ohm; },
       [](SimConfig& c, double v) {
         c.actuator_a.resistance_ohm = v;
         c.actuator_b.resistance_ohm = v;
       }},
      {"max_stroke_m", false,
       [](const SimConfig& c) { return c.actuator_a.max_stroke_m; },
       [](SimConfig& c, double v) {
         c.actuator_a.max_stroke_m = v;
         c.actuator_b.max_stroke_m = v;
       }},
  };
  return table;
}

inline const ParamAccessor* find_param(std::string_view name) {
  for (const auto& p : param_table()) {
    if (name == p.name) return &p;
  }
  return nullptr;
}

inline std::vector<std::string> param_names(bool calibratable_only) {
  std::vector<std::string> names;
  for (const auto& p : param_table()) {
    if (!calibratable_only || p.calibratable) names.emplace_back(p.name);
  }
  return names;
}

}  // namespace foldosc
