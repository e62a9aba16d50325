#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "foldosc/config.hpp"
#include "foldosc/model.hpp"
#include "foldosc/validate.hpp"

namespace foldosc {

// Raised when the hybrid integration cannot continue: non-finite state, or a
// second snap inside one step (chattering faster than step_s resolves).
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, double time_s)
      : std::runtime_error(what + " (t=" + std::to_string(time_s) + " s)"), time_s_(time_s) {}
  double time_s() const { return time_s_; }

 private:
  double time_s_;
};

struct TraceRow {
  double time_s = 0.0;
  double temp_a_c = 0.0;
  double temp_b_c = 0.0;
  double current_a_a = 0.0;
  double current_b_a = 0.0;
  BeamSide beam_side = BeamSide::A;
  double stroke_a_m = 0.0;
  double stroke_b_m = 0.0;
};

struct SnapEvent {
  double time_s = 0.0;
  BeamSide side_before = BeamSide::A;
  BeamSide side_after = BeamSide::B;
};

struct Trace {
  std::vector<TraceRow> rows;
  std::vector<SnapEvent> events;
};

namespace detail {

struct TempPair {
  double a, b;
};

}  // namespace detail

// Fixed-step RK4 over the two thermal nodes with the beam side held constant
// inside each step; snap times are located by bisection down to
// event_tolerance_s and the located time is the right end of the bracket, so
// snap_condition holds there. Throws std::invalid_argument on an invalid
// config and SimulationError on divergence or chattering.
inline Trace simulate(const SimConfig& cfg) {
  {
    const auto violations = validate(cfg);
    if (!violations.empty()) {
      std::string msg = "invalid config:";
      for (const auto& v : violations) msg += "\n  " + v.to_string();
      throw std::invalid_argument(msg);
    }
  }

  const double h = cfg.step_s;
  const int stride = cfg.record_stride;
  int64_t n_steps = static_cast<int64_t>(std::ceil(cfg.horizon_s / h - 1e-9));
  if (n_steps < 1) n_steps = 1;
  n_steps = (n_steps + stride - 1) / stride * stride;

  ActuatorState sa{cfg.initial_temp_a(), 0.0};
  ActuatorState sb{cfg.initial_temp_b(), 0.0};
  BeamSide side = cfg.initial_side;

  auto deriv = [&](double ta, double tb, BeamSide s) -> detail::TempPair {
    const double pa = s == BeamSide::A ? loop_power(cfg.circuit, s, cfg.actuator_a) : 0.0;
    const double pb = s == BeamSide::B ? loop_power(cfg.circuit, s, cfg.actuator_b) : 0.0;
    return {thermal_derivative({ta, 0.0}, pa, cfg.actuator_a, cfg.environment),
            thermal_derivative({tb, 0.0}, pb, cfg.actuator_b, cfg.environment)};
  };
  auto rk4 = [&](double ta, double tb, BeamSide s, double dt) -> detail::TempPair {
    const auto k1 = deriv(ta, tb, s);
    const auto k2 = deriv(ta + 0.5 * dt * k1.a, tb + 0.5 * dt * k1.b, s);
    const auto k3 = deriv(ta + 0.5 * dt * k2.a, tb + 0.5 * dt * k2.b, s);
    const auto k4 = deriv(ta + dt * k3.a, tb + dt * k3.b, s);
    return {ta + dt / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a),
            tb + dt / 6.0 * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b)};
  };
  // Signed distance of the powered actuator from its snap threshold.
  auto snap_gap = [&](double ta, double tb, BeamSide s) {
    const ActuatorState st{s == BeamSide::A ? ta : tb,
                           s == BeamSide::A ? sa.accumulated_drift_m : sb.accumulated_drift_m};
    const ActuatorParams& p = s == BeamSide::A ? cfg.actuator_a : cfg.actuator_b;
    const double crit = s == BeamSide::A ? cfg.beam.crit_stroke_a_m : cfg.beam.crit_stroke_b_m;
    return available_stroke(st, p) - crit;
  };

  Trace trace;
  trace.rows.reserve(static_cast<size_t>(n_steps / stride) + 2);

  auto record = [&](double t) {
    const double i = cfg.circuit.source_current_a;
    trace.rows.push_back({t, sa.temperature_c, sb.temperature_c,
                          side == BeamSide::A ? i : 0.0, side == BeamSide::B ? i : 0.0, side,
                          available_stroke(sa, cfg.actuator_a),
                          available_stroke(sb, cfg.actuator_b)});
  };
  auto fire_event = [&](double t) {
    const BeamSide before = side;
    side = apply_snap(side, sa, sb, cfg.actuator_a, cfg.actuator_b, cfg.beam);
    trace.events.push_back({t, before, side});
  };

  // Initial condition may already satisfy the snap condition; that single
  // event fires at t=0, and an immediate re-trigger is chattering.
  if (snap_gap(sa.temperature_c, sb.temperature_c, side) >= 0.0) {
    fire_event(0.0);
    if (snap_gap(sa.temperature_c, sb.temperature_c, side) >= 0.0) {
      throw SimulationError("cascading snap events at the initial condition", 0.0);
    }
  }

  for (int64_t n = 0;; ++n) {
    const double t = h * static_cast<double>(n);
    if (n > 0 && snap_gap(sa.temperature_c, sb.temperature_c, side) >= 0.0) {
      throw SimulationError("second snap event inside one integrator step", t);
    }
    if (n % stride == 0) record(t);
    if (n == n_steps) break;

    const auto full = rk4(sa.temperature_c, sb.temperature_c, side, h);
    if (!std::isfinite(full.a) || !std::isfinite(full.b)) {
      throw SimulationError("temperature state became non-finite", t + h);
    }

    if (snap_gap(full.a, full.b, side) >= 0.0) {
      // Bracket [lo, hi] with gap(lo) < 0 <= gap(hi); keep the right end.
      double lo = 0.0, hi = h;
      auto at_hi = full;
      for (int it = 0; hi - lo > cfg.event_tolerance_s && it < 128; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto m = rk4(sa.temperature_c, sb.temperature_c, side, mid);
        if (snap_gap(m.a, m.b, side) >= 0.0) {
          hi = mid;
          at_hi = m;
        } else {
          lo = mid;
        }
      }
      const double remaining = h - hi;
      sa.temperature_c = at_hi.a;
      sb.temperature_c = at_hi.b;
      fire_event(t + hi);
      if (remaining > 0.0) {
        const auto rest = rk4(sa.temperature_c, sb.temperature_c, side, remaining);
        if (!std::isfinite(rest.a) || !std::isfinite(rest.b)) {
          throw SimulationError("temperature state became non-finite", t + h);
        }
        sa.temperature_c = rest.a;
        sb.temperature_c = rest.b;
      }
    } else {
      sa.temperature_c = full.a;
      sb.temperature_c = full.b;
    }
  }
  return trace;
}

// Rebuilds the trace on a uniform grid of spacing dt_s covering the original
// time span. Temperatures and strokes are linearly interpolated; side and
// currents are held from the sample at or before each new time. Events pass
// through unchanged. New times that land on an original sample (within 1e-9 s)
// copy that row verbatim.
inline Trace resample(const Trace& trace, double dt_s) {
  if (trace.rows.empty()) throw std::invalid_argument("resample: trace has no rows");
  if (!(dt_s > 0.0) || !std::isfinite(dt_s)) {
    throw std::invalid_argument("resample: dt_s must be positive and finite");
  }
  const auto& rows = trace.rows;
  const double t0 = rows.front().time_s;
  const double t_end = rows.back().time_s;

  Trace out;
  out.events = trace.events;
  out.rows.reserve(static_cast<size_t>((t_end - t0) / dt_s) + 2);

  size_t j = 0;  // last original row with time <= t
  for (int64_t k = 0;; ++k) {
    double t = t0 + dt_s * static_cast<double>(k);
    if (t > t_end + 1e-9) break;
    if (t > t_end) t = t_end;
    while (j + 1 < rows.size() && rows[j + 1].time_s <= t + 1e-9) ++j;

    if (std::abs(rows[j].time_s - t) <= 1e-9) {
      out.rows.push_back(rows[j]);
      continue;
    }
    const TraceRow& lo = rows[j];
    const TraceRow& hi = rows[j + 1];
    const double w = (t - lo.time_s) / (hi.time_s - lo.time_s);
    TraceRow r = lo;  // side and currents held from the left sample
    r.time_s = t;
    r.temp_a_c = lo.temp_a_c + w * (hi.temp_a_c - lo.temp_a_c);
    r.temp_b_c = lo.temp_b_c + w * (hi.temp_b_c - lo.temp_b_c);
    r.stroke_a_m = lo.stroke_a_m + w * (hi.stroke_a_m - lo.stroke_a_m);
    r.stroke_b_m = lo.stroke_b_m + w * (hi.stroke_b_m - lo.stroke_b_m);
    out.rows.push_back(r);
  }
  return out;
}

}  // namespace foldosc
