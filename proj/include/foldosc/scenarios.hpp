#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "foldosc/config.hpp"
#include "foldosc/validate.hpp"

namespace foldosc {

enum class OutcomeTag { Oscillates, NoSnap, OverheatFlag };

inline const char* outcome_name(OutcomeTag tag) {
  switch (tag) {
    case OutcomeTag::Oscillates: return "oscillates";
    case OutcomeTag::NoSnap: return "no_snap";
    case OutcomeTag::OverheatFlag: return "overheat_flag";
  }
  return "?";
}

struct ScenarioPreset {
  std::string name;
  std::string description;
  SimConfig config;
  OutcomeTag expected;
};

class UnknownPresetError : public std::runtime_error {
 public:
  explicit UnknownPresetError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

// Hand-wound actuator pair fitted to the measured snap timeline. The two
// sides carry their own fitted thermal values (A heats slowly through the
// first 3.8 s pull, B answers in 2.1 s), the electrical asymmetry lives in
// the contact resistances, the mechanical asymmetry in the two critical
// strokes. Every snap threshold sits in a 43.4-44.7 C band, well below the
// 60 C glass transition, and the loop left powered after the drift stall
// levels off near 54 C, so a healthy run never trips the overheat flags.
inline SimConfig oscillator_base() {
  SimConfig cfg;
  cfg.step_s = 1e-3;
  cfg.horizon_s = 30.0;
  cfg.event_tolerance_s = 1e-6;
  cfg.record_stride = 1;

  cfg.environment.ambient_c = 24.0;
  cfg.environment.mode = CoolingMode::ForcedAir;
  cfg.environment.multiplier = kDefaultForcedAirMultiplier;

  ActuatorParams act;
  act.resistance_ohm = 10.0;
  act.thermal_capacitance_j_per_k = 0.377;
  act.conv_conductance_w_per_k = 0.0524;
  act.activation_temp_c = 40.0;
  act.contraction_coeff_m_per_k = 1.0e-3;
  act.max_stroke_m = 5.0e-3;
  act.drift_per_cycle_m = 3.3e-4;
  act.actuator_tg_c = 60.0;
  cfg.actuator_a = act;
  cfg.actuator_b = act;
  cfg.actuator_b.thermal_capacitance_j_per_k = 0.24;
  cfg.actuator_b.conv_conductance_w_per_k = 0.06;

  cfg.beam.crit_stroke_a_m = 3.4e-3;
  cfg.beam.crit_stroke_b_m = 3.7e-3;
  cfg.beam.beam_tg_c = 60.0;

  cfg.circuit.source_current_a = 0.55;
  cfg.circuit.contact_resistance_a_ohm = 0.6;
  cfg.circuit.contact_resistance_b_ohm = 4.0;
  cfg.circuit.contact_heat_fraction = 0.5;

  cfg.initial_side = BeamSide::A;
  return cfg;
}

}  // namespace detail

inline std::vector<ScenarioPreset> all_presets() {
  std::vector<ScenarioPreset> presets;

  {
    ScenarioPreset p;
    p.name = "oscillator_forced_air";
    p.description =
        "Self-switching relaxation oscillator at 0.55 A under forced-air cooling; "
        "runs about nine snap events before drift stalls it.";
    p.config = detail::oscillator_base();
    p.expected = OutcomeTag::Oscillates;
    presets.push_back(std::move(p));
  }
  {
    ScenarioPreset p;
    p.name = "contact_standing_air";
    p.description =
        "Single-contact endurance check at 0.45 A in standing air; the contact "
        "region overruns the beam glass transition.";
    p.config = detail::oscillator_base();
    p.config.environment.mode = CoolingMode::StandingAir;
    p.config.environment.multiplier = 1.0;
    p.config.circuit.source_current_a = 0.45;
    p.config.horizon_s = 50.0;
    p.expected = OutcomeTag::OverheatFlag;
    presets.push_back(std::move(p));
  }
  {
    ScenarioPreset p;
    p.name = "water_immersion";
    p.description =
        "Immersed run at 4.0 A; water carries the heat away faster than the "
        "actuator can reach its activation temperature, so the beam never snaps.";
    p.config = detail::oscillator_base();
    p.config.environment.mode = CoolingMode::Water;
    p.config.environment.multiplier = 350.0;
    p.config.circuit.source_current_a = 4.0;
    p.config.horizon_s = 60.0;
    p.expected = OutcomeTag::NoSnap;
    presets.push_back(std::move(p));
  }
  {
    ScenarioPreset p;
    p.name = "zero_drift";
    p.description =
        "Idealized pair with no per-cycle drift; the oscillation settles into a "
        "limit cycle and keeps running for the whole horizon.";
    p.config = detail::oscillator_base();
    p.config.actuator_a.drift_per_cycle_m = 0.0;
    p.config.actuator_b.drift_per_cycle_m = 0.0;
    p.config.horizon_s = 400.0;
    p.expected = OutcomeTag::Oscillates;
    presets.push_back(std::move(p));
  }
  return presets;
}

inline std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : all_presets()) names.push_back(p.name);
  return names;
}

inline ScenarioPreset preset(const std::string& name) {
  for (auto& p : all_presets()) {
    if (p.name == name) return p;
  }
  std::string msg = "unknown preset '" + name + "'; available:";
  for (const auto& n : preset_names()) msg += " " + n;
  throw UnknownPresetError(msg);
}

}  // namespace foldosc
