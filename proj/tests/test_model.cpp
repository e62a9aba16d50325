#include <catch2/catch_amalgamated.hpp>

#include "foldosc/model.hpp"

using namespace foldosc;

namespace {

ActuatorParams basic_actuator() {
  ActuatorParams act;
  act.resistance_ohm = 10.0;
  act.thermal_capacitance_j_per_k = 1.0;
  act.conv_conductance_w_per_k = 0.1;
  act.activation_temp_c = 40.0;
  act.contraction_coeff_m_per_k = 1e-4;
  act.max_stroke_m = 5e-3;
  act.drift_per_cycle_m = 2e-4;
  act.actuator_tg_c = 60.0;
  return act;
}

}  // namespace

TEST_CASE("loop_power matches hand arithmetic") {
  ActuatorParams act = basic_actuator();

  CircuitModel c;
  c.source_current_a = 0.55;
  c.contact_resistance_a_ohm = 0.0;
  c.contact_heat_fraction = 0.0;
  CHECK(loop_power(c, BeamSide::A, act) == Catch::Approx(3.025).epsilon(1e-12));

  c.source_current_a = 0.45;
  c.contact_resistance_b_ohm = 2.0;
  c.contact_heat_fraction = 0.5;
  CHECK(loop_power(c, BeamSide::B, act) == Catch::Approx(2.2275).epsilon(1e-12));

  c.source_current_a = 0.0;
  CHECK(loop_power(c, BeamSide::A, act) == 0.0);
  CHECK(loop_power(c, BeamSide::B, act) == 0.0);
}

TEST_CASE("thermal_derivative equilibrium and cooling rates") {
  ActuatorParams act = basic_actuator();
  Environment env;
  env.ambient_c = 24.0;

  CHECK(thermal_derivative({24.0, 0.0}, 0.0, act, env) == 0.0);

  // steady state T_ss = ambient + P/hA = 24 + 3.025/0.1
  CHECK(thermal_derivative({54.25, 0.0}, 3.025, act, env) == Catch::Approx(0.0).margin(1e-12));

  CHECK(thermal_derivative({80.0, 0.0}, 0.0, act, env) == Catch::Approx(-5.6).epsilon(1e-12));
}

TEST_CASE("thermal steady state agrees with an independent integration") {
  // Forward-Euler micro-stepping is a deliberately separate numerical path;
  // 200 simulated seconds is 20 time constants.
  ActuatorParams act = basic_actuator();
  Environment env;
  env.ambient_c = 24.0;
  const double power = 3.025;

  double temp = 24.0;
  const double dt = 1e-4;
  for (int i = 0; i < 2000000; ++i) {
    temp += dt * thermal_derivative({temp, 0.0}, power, act, env);
  }
  CHECK(temp == Catch::Approx(54.25).epsilon(1e-6));
}

TEST_CASE("available_stroke clamps, saturates and floors") {
  ActuatorParams act = basic_actuator();

  CHECK(available_stroke({30.0, 0.0}, act) == 0.0);
  CHECK(available_stroke({70.0, 0.0}, act) == Catch::Approx(3e-3).epsilon(1e-12));
  CHECK(available_stroke({70.0, 3.5e-3}, act) == 0.0);

  // saturation: far above activation the stroke caps at max_stroke
  CHECK(available_stroke({400.0, 0.0}, act) == Catch::Approx(5e-3).epsilon(1e-12));
  CHECK(available_stroke({400.0, 1e-3}, act) == Catch::Approx(4e-3).epsilon(1e-12));
}

TEST_CASE("snap_condition fires at exact equality") {
  BeamModel beam;
  beam.crit_stroke_a_m = 3e-3;
  beam.crit_stroke_b_m = 4e-3;

  CHECK(snap_condition(3e-3, beam, BeamSide::A));
  CHECK_FALSE(snap_condition(0.0, beam, BeamSide::A));
  CHECK(snap_condition(1.01 * 3e-3, beam, BeamSide::A));

  CHECK_FALSE(snap_condition(3e-3, beam, BeamSide::B));
  CHECK(snap_condition(4e-3, beam, BeamSide::B));
}

TEST_CASE("apply_snap toggles the side and charges drift to the puller") {
  ActuatorParams act = basic_actuator();
  BeamModel beam;
  beam.crit_stroke_a_m = 2e-3;
  beam.crit_stroke_b_m = 2e-3;

  ActuatorState a{70.0, 0.0};  // stroke 3e-3 >= 2e-3
  ActuatorState b{70.0, 0.0};

  BeamSide side = apply_snap(BeamSide::A, a, b, act, act, beam);
  CHECK(side == BeamSide::B);
  CHECK(a.accumulated_drift_m == Catch::Approx(2e-4).epsilon(1e-12));
  CHECK(b.accumulated_drift_m == 0.0);
  CHECK(a.temperature_c == 70.0);
  CHECK(b.temperature_c == 70.0);

  side = apply_snap(side, a, b, act, act, beam);
  CHECK(side == BeamSide::A);
  CHECK(a.accumulated_drift_m == Catch::Approx(2e-4).epsilon(1e-12));
  CHECK(b.accumulated_drift_m == Catch::Approx(2e-4).epsilon(1e-12));
}

TEST_CASE("apply_snap with zero drift only toggles") {
  ActuatorParams act = basic_actuator();
  act.drift_per_cycle_m = 0.0;
  BeamModel beam;
  beam.crit_stroke_a_m = 2e-3;
  beam.crit_stroke_b_m = 2e-3;

  ActuatorState a{70.0, 0.0};
  ActuatorState b{25.0, 0.0};
  const BeamSide side = apply_snap(BeamSide::A, a, b, act, act, beam);
  CHECK(side == BeamSide::B);
  CHECK(a.accumulated_drift_m == 0.0);
  CHECK(a.temperature_c == 70.0);
  CHECK(b.temperature_c == 25.0);
}

TEST_CASE("apply_snap rejects a call without a satisfied snap condition") {
  ActuatorParams act = basic_actuator();
  BeamModel beam;
  beam.crit_stroke_a_m = 4e-3;
  beam.crit_stroke_b_m = 4e-3;

  ActuatorState a{50.0, 0.0};  // stroke 1e-3 < 4e-3
  ActuatorState b{24.0, 0.0};
  CHECK_THROWS_AS(apply_snap(BeamSide::A, a, b, act, act, beam), std::logic_error);
}

TEST_CASE("environment multiplier applies only away from standing air") {
  Environment env;
  env.multiplier = 7.0;

  env.mode = CoolingMode::StandingAir;
  CHECK(env.conv_multiplier() == 1.0);
  env.mode = CoolingMode::ForcedAir;
  CHECK(env.conv_multiplier() == 7.0);
  env.mode = CoolingMode::Water;
  CHECK(env.conv_multiplier() == 7.0);
}
