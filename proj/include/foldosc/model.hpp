#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace foldosc {

// Which side of the bistable beam currently holds. The beam is quasi-static:
// it sits on exactly one side at all times, and the closed electrical loop
// follows it (SideA <=> loop through actuator A is closed).
enum class BeamSide { A, B };

inline BeamSide opposite(BeamSide side) {
  return side == BeamSide::A ? BeamSide::B : BeamSide::A;
}

inline char side_letter(BeamSide side) { return side == BeamSide::A ? 'A' : 'B'; }

enum class CoolingMode { StandingAir, ForcedAir, Water };

// Default convective multiplier for forced-air scenarios. Water scenarios must
// sit at least a decade above it (enforced by validate()).
inline constexpr double kDefaultForcedAirMultiplier = 2.0;
inline constexpr double kMinWaterMultiplier = 10.0 * kDefaultForcedAirMultiplier;

struct Environment {
  double ambient_c = 24.0;
  CoolingMode mode = CoolingMode::StandingAir;
  double multiplier = 1.0;  // scales conv_conductance; ignored for standing air

  double conv_multiplier() const {
    return mode == CoolingMode::StandingAir ? 1.0 : multiplier;
  }
};

// Lumped one-node model of a single coiled-thread actuator.
struct ActuatorParams {
  double resistance_ohm = 0.0;             // treated as temperature independent
  double thermal_capacitance_j_per_k = 0.0;
  double conv_conductance_w_per_k = 0.0;   // hA in standing air
  double activation_temp_c = 0.0;          // contraction onset
  double contraction_coeff_m_per_k = 0.0;  // stroke per kelvin above onset
  double max_stroke_m = 0.0;               // saturation stroke
  double drift_per_cycle_m = 0.0;          // free-length loss per completed pull
  double actuator_tg_c = 60.0;
};

struct ActuatorState {
  double temperature_c = 0.0;
  double accumulated_drift_m = 0.0;  // never decreases
};

struct BeamModel {
  double crit_stroke_a_m = 0.0;  // stroke needed to snap away from side A
  double crit_stroke_b_m = 0.0;  // stroke needed to snap back from side B
  double beam_tg_c = 60.0;
};

struct CircuitModel {
  double source_current_a = 0.0;  // ideal constant-current source
  double contact_resistance_a_ohm = 0.0;
  double contact_resistance_b_ohm = 0.0;
  // Fraction of the contact Joule heat that lands in the actuator's thermal
  // node; the rest is lost to the frame.
  double contact_heat_fraction = 0.5;
};

// Electrical power deposited into the actuator of the closed loop. The
// opposite actuator carries no current and receives exactly zero.
inline double loop_power(const CircuitModel& circuit, BeamSide active_side,
                         const ActuatorParams& act) {
  const double i2 = circuit.source_current_a * circuit.source_current_a;
  const double r_contact = active_side == BeamSide::A
                               ? circuit.contact_resistance_a_ohm
                               : circuit.contact_resistance_b_ohm;
  return i2 * act.resistance_ohm + circuit.contact_heat_fraction * i2 * r_contact;
}

// Newton-cooling energy balance for one actuator node.
inline double thermal_derivative(const ActuatorState& state, double power_w,
                                 const ActuatorParams& act, const Environment& env) {
  const double ha_eff = act.conv_conductance_w_per_k * env.conv_multiplier();
  return (power_w - ha_eff * (state.temperature_c - env.ambient_c)) /
         act.thermal_capacitance_j_per_k;
}

// Stroke the actuator can still exert on the beam: piecewise-linear thermal
// contraction with saturation, reduced by irreversible drift, floored at zero.
inline double available_stroke(const ActuatorState& state, const ActuatorParams& act) {
  const double thermal = act.contraction_coeff_m_per_k *
                         std::max(0.0, state.temperature_c - act.activation_temp_c);
  const double capped = std::clamp(thermal, 0.0, act.max_stroke_m);
  return std::max(0.0, capped - state.accumulated_drift_m);
}

// A stroke exactly at the critical value counts as a snap.
inline bool snap_condition(double stroke_m, const BeamModel& beam, BeamSide side) {
  const double crit = side == BeamSide::A ? beam.crit_stroke_a_m : beam.crit_stroke_b_m;
  return stroke_m >= crit;
}

// Instantaneous snap-through: the beam toggles, the actuator that pulled loses
// drift_per_cycle_m of free length, temperatures are untouched. Calling this
// while the active actuator cannot snap is a programming error.
inline BeamSide apply_snap(BeamSide side, ActuatorState& state_a, ActuatorState& state_b,
                           const ActuatorParams& act_a, const ActuatorParams& act_b,
                           const BeamModel& beam) {
  ActuatorState& puller = side == BeamSide::A ? state_a : state_b;
  const ActuatorParams& puller_params = side == BeamSide::A ? act_a : act_b;
  if (!snap_condition(available_stroke(puller, puller_params), beam, side)) {
    throw std::logic_error("apply_snap called while snap_condition is false");
  }
  puller.accumulated_drift_m += puller_params.drift_per_cycle_m;
  return opposite(side);
}

}  // namespace foldosc
