#pragma once

#include <optional>

#include "foldosc/model.hpp"

namespace foldosc {

// Full description of one run. Initial temperatures left unset start at
// ambient.
struct SimConfig {
  double step_s = 1e-3;
  double horizon_s = 30.0;
  double event_tolerance_s = 1e-6;
  int record_stride = 1;

  Environment environment;
  ActuatorParams actuator_a;
  ActuatorParams actuator_b;
  BeamModel beam;
  CircuitModel circuit;

  std::optional<double> initial_temp_a_c;
  std::optional<double> initial_temp_b_c;
  BeamSide initial_side = BeamSide::A;

  double initial_temp_a() const { return initial_temp_a_c.value_or(environment.ambient_c); }
  double initial_temp_b() const { return initial_temp_b_c.value_or(environment.ambient_c); }
};

}  // namespace foldosc
