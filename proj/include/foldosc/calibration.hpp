#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "foldosc/analysis.hpp"
#include "foldosc/integrator.hpp"
#include "foldosc/param_table.hpp"

namespace foldosc {

// Measured timeline features a candidate parameter set is scored against.
struct CalibrationTargets {
  double first_snap_s = 3.8;
  double first_snapback_s = 5.9;
  double mean_period_s = 3.75;
  double total_cycles = 4.5;
  double stall_time_s = 20.0;

  double w_first_snap = 1.0;
  double w_first_snapback = 1.0;
  double w_mean_period = 1.0;
  double w_total_cycles = 1.0;
  double w_stall_time = 1.0;
};

struct ParamBound {
  std::string name;  // must name a calibratable entry of param_table()
  double lower = 0.0;
  double upper = 0.0;  // lower == upper pins the parameter
};
using ParameterBounds = std::vector<ParamBound>;

// Non-oscillating candidates dominate any single-target miss of 100%; the
// shaping term rewards getting actuator A closer to its snap threshold.
inline constexpr double kZeroEventPenalty = 1e4;

struct ObjectiveBreakdown {
  double loss = 0.0;
  int n_events = 0;
  bool oscillating = false;  // at least one full cycle
  bool failed = false;       // simulation rejected the candidate
  std::optional<double> first_snap_s;
  std::optional<double> first_snapback_s;
  std::optional<double> mean_period_s;
  std::optional<double> total_cycles;
  std::optional<double> stall_time_s;
};

inline SimConfig overlay_params(const SimConfig& base, const ParameterBounds& bounds,
                                const std::vector<double>& values) {
  if (bounds.size() != values.size()) {
    throw std::invalid_argument("objective: bounds and values differ in length");
  }
  SimConfig cfg = base;
  for (size_t i = 0; i < bounds.size(); ++i) {
    const ParamAccessor* p = find_param(bounds[i].name);
    if (p == nullptr || !p->calibratable) {
      throw std::invalid_argument("objective: unknown parameter '" + bounds[i].name + "'");
    }
    p->set(cfg, values[i]);
  }
  return cfg;
}

// Weighted sum of squared relative errors over the five timeline targets.
// A target the run never produces contributes a full miss (residual 1);
// divergence maps to an infinite loss so the optimizer just moves on.
inline ObjectiveBreakdown evaluate_objective(const std::vector<double>& values,
                                             const ParameterBounds& bounds,
                                             const CalibrationTargets& targets,
                                             const SimConfig& base) {
  ObjectiveBreakdown out;
  SimConfig cfg = overlay_params(base, bounds, values);

  Trace trace;
  try {
    trace = simulate(cfg);
  } catch (const SimulationError&) {
    out.failed = true;
    out.loss = std::numeric_limits<double>::infinity();
    return out;
  } catch (const std::invalid_argument&) {
    out.failed = true;
    out.loss = std::numeric_limits<double>::infinity();
    return out;
  }

  const SimSummary s = summarize(trace, cfg.beam.beam_tg_c,
                                 std::min(cfg.actuator_a.actuator_tg_c, cfg.actuator_b.actuator_tg_c));
  out.n_events = s.n_snap_events;
  out.oscillating = s.n_snap_events >= 2;

  if (s.n_snap_events == 0) {
    double closest = 0.0;
    for (const auto& r : trace.rows) closest = std::max(closest, r.stroke_a_m);
    const double crit = cfg.beam.crit_stroke_a_m;
    const double shaping = std::clamp((crit - closest) / crit, 0.0, 1.0);
    out.loss = kZeroEventPenalty * (1.0 + shaping);
    return out;
  }

  if (s.n_snap_events >= 1) out.first_snap_s = trace.events[0].time_s;
  if (s.n_snap_events >= 2) out.first_snapback_s = trace.events[1].time_s;
  out.mean_period_s = s.mean_period_s;
  out.total_cycles = s.total_cycles();
  out.stall_time_s = s.stall_time_s;

  auto residual = [](const std::optional<double>& value, double target) {
    return value ? (*value - target) / target : 1.0;
  };
  const double r1 = residual(out.first_snap_s, targets.first_snap_s);
  const double r2 = residual(out.first_snapback_s, targets.first_snapback_s);
  const double r3 = residual(out.mean_period_s, targets.mean_period_s);
  const double r4 = residual(out.total_cycles, targets.total_cycles);
  const double r5 = residual(out.stall_time_s, targets.stall_time_s);
  out.loss = targets.w_first_snap * r1 * r1 + targets.w_first_snapback * r2 * r2 +
             targets.w_mean_period * r3 * r3 + targets.w_total_cycles * r4 * r4 +
             targets.w_stall_time * r5 * r5;
  return out;
}

inline double objective(const std::vector<double>& values, const ParameterBounds& bounds,
                        const CalibrationTargets& targets, const SimConfig& base) {
  return evaluate_objective(values, bounds, targets, base).loss;
}

struct OptimizerSettings {
  long long max_evals = 2000;  // total across all restarts
  int restarts = 8;
  uint64_t seed = 12345;
  double spread_tol = 1e-4;  // simplex spread in box-relative coordinates
};

struct HistoryEntry {
  long long eval = 0;
  int restart = 0;
  std::vector<double> values;
  double loss = 0.0;
  double best_loss = 0.0;
};

struct CalibrationResult {
  std::vector<double> best_values;
  double best_loss = std::numeric_limits<double>::infinity();
  bool found_oscillation = false;
  long long evals = 0;
  std::vector<HistoryEntry> history;
};

namespace detail {

// 53-bit mantissa draw; identical on every platform for a given engine state,
// unlike std::uniform_real_distribution.
inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

// Derivative-free Nelder-Mead in box-normalized coordinates with deterministic
// seeded restarts. Proposals are clamped into the box before evaluation, so
// no candidate ever leaves the bounds. Restart 0 starts from the base config's
// own values; later restarts sample the box uniformly. Pinned bounds
// (lower == upper) are held fixed and do not join the simplex.
inline CalibrationResult calibrate(const CalibrationTargets& targets,
                                   const ParameterBounds& bounds, const SimConfig& base,
                                   const OptimizerSettings& settings = {}) {
  for (const auto& b : bounds) {
    const ParamAccessor* p = find_param(b.name);
    if (p == nullptr || !p->calibratable) {
      throw std::invalid_argument("calibrate: unknown parameter '" + b.name + "'");
    }
    if (!(b.lower <= b.upper)) {
      throw std::invalid_argument("calibrate: bound '" + b.name + "' has lower > upper");
    }
  }
  if (bounds.empty()) throw std::invalid_argument("calibrate: no parameters to fit");

  std::vector<size_t> free_dims;
  for (size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i].lower < bounds[i].upper) free_dims.push_back(i);
  }
  const size_t n = free_dims.size();

  CalibrationResult result;
  result.best_values.resize(bounds.size());

  auto denormalize = [&](const std::vector<double>& u) {
    std::vector<double> x(bounds.size());
    for (size_t i = 0; i < bounds.size(); ++i) x[i] = bounds[i].lower;
    for (size_t d = 0; d < n; ++d) {
      const auto& b = bounds[free_dims[d]];
      x[free_dims[d]] = b.lower + u[d] * (b.upper - b.lower);
    }
    return x;
  };

  long long evals_left = std::max<long long>(1, settings.max_evals);
  int restart_index = 0;
  auto evaluate = [&](const std::vector<double>& u) {
    const std::vector<double> x = denormalize(u);
    const ObjectiveBreakdown bd = evaluate_objective(x, bounds, targets, base);
    --evals_left;
    ++result.evals;
    if (bd.oscillating) result.found_oscillation = true;
    if (bd.loss < result.best_loss) {
      result.best_loss = bd.loss;
      result.best_values = x;
    }
    result.history.push_back({result.evals, restart_index, x, bd.loss, result.best_loss});
    return bd.loss;
  };

  // Degenerate box: nothing to move, a single evaluation settles it.
  if (n == 0) {
    evaluate({});
    return result;
  }

  std::mt19937_64 rng(settings.seed);
  const int restarts = std::max(1, settings.restarts);
  const long long per_restart = std::max<long long>(n + 2, settings.max_evals / restarts);

  std::vector<double> start0(n);
  for (size_t d = 0; d < n; ++d) {
    const auto& b = bounds[free_dims[d]];
    const ParamAccessor* p = find_param(b.name);
    const double current = std::clamp(p->get(base), b.lower, b.upper);
    start0[d] = (current - b.lower) / (b.upper - b.lower);
  }

  using Vertex = std::pair<std::vector<double>, double>;
  for (restart_index = 0; restart_index < restarts && evals_left > 0; ++restart_index) {
    std::vector<double> start(n);
    if (restart_index == 0) {
      start = start0;
    } else {
      for (size_t d = 0; d < n; ++d) start[d] = detail::unit_draw(rng);
    }

    long long budget = std::min(per_restart, evals_left);
    auto spend = [&]() { return --budget >= 0 && evals_left > 0; };

    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    if (!spend()) break;
    simplex.emplace_back(start, evaluate(start));
    for (size_t d = 0; d < n && spend(); ++d) {
      std::vector<double> v = start;
      v[d] += (v[d] + 0.10 <= 1.0) ? 0.10 : -0.10;
      v[d] = std::clamp(v[d], 0.0, 1.0);
      simplex.emplace_back(v, evaluate(v));
    }
    if (simplex.size() < n + 1) break;  // budget exhausted mid-setup

    auto order = [&]() {
      std::sort(simplex.begin(), simplex.end(),
                [](const Vertex& a, const Vertex& b) { return a.second < b.second; });
    };
    auto spread = [&]() {
      double worst = 0.0;
      for (size_t d = 0; d < n; ++d) {
        double lo = simplex[0].first[d], hi = lo;
        for (const auto& v : simplex) {
          lo = std::min(lo, v.first[d]);
          hi = std::max(hi, v.first[d]);
        }
        worst = std::max(worst, hi - lo);
      }
      return worst;
    };
    auto clamp_box = [](std::vector<double> u) {
      for (auto& c : u) c = std::clamp(c, 0.0, 1.0);
      return u;
    };

    order();
    while (spread() > settings.spread_tol) {
      std::vector<double> centroid(n, 0.0);
      for (size_t i = 0; i < n; ++i) {
        for (size_t d = 0; d < n; ++d) centroid[d] += simplex[i].first[d];
      }
      for (size_t d = 0; d < n; ++d) centroid[d] /= static_cast<double>(n);
      const Vertex& worst = simplex[n];

      auto blend = [&](double coeff) {
        std::vector<double> u(n);
        for (size_t d = 0; d < n; ++d) u[d] = centroid[d] + coeff * (centroid[d] - worst.first[d]);
        return clamp_box(std::move(u));
      };

      if (!spend()) break;
      const auto refl = blend(1.0);
      const double f_refl = evaluate(refl);

      if (f_refl < simplex[0].second) {
        if (!spend()) {
          simplex[n] = {refl, f_refl};
          break;
        }
        const auto expa = blend(2.0);
        const double f_expa = evaluate(expa);
        simplex[n] = f_expa < f_refl ? Vertex{expa, f_expa} : Vertex{refl, f_refl};
      } else if (f_refl < simplex[n - 1].second) {
        simplex[n] = {refl, f_refl};
      } else if (f_refl < worst.second) {
        if (!spend()) {
          simplex[n] = {refl, f_refl};
          break;
        }
        const auto out_c = blend(0.5);
        const double f_out = evaluate(out_c);
        if (f_out <= f_refl) {
          simplex[n] = {out_c, f_out};
        } else {
          // shrink toward the best vertex
          bool ok = true;
          for (size_t i = 1; i <= n && (ok = spend()); ++i) {
            std::vector<double> u(n);
            for (size_t d = 0; d < n; ++d) {
              u[d] = simplex[0].first[d] + 0.5 * (simplex[i].first[d] - simplex[0].first[d]);
            }
            simplex[i] = {u, evaluate(u)};
          }
          if (!ok) break;
        }
      } else {
        if (!spend()) break;
        const auto in_c = blend(-0.5);
        const double f_in = evaluate(in_c);
        if (f_in < worst.second) {
          simplex[n] = {in_c, f_in};
        } else {
          bool ok = true;
          for (size_t i = 1; i <= n && (ok = spend()); ++i) {
            std::vector<double> u(n);
            for (size_t d = 0; d < n; ++d) {
              u[d] = simplex[0].first[d] + 0.5 * (simplex[i].first[d] - simplex[0].first[d]);
            }
            simplex[i] = {u, evaluate(u)};
          }
          if (!ok) break;
        }
      }
      order();
    }
  }
  return result;
}

}  // namespace foldosc
