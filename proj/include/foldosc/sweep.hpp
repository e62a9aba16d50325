#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "foldosc/analysis.hpp"
#include "foldosc/integrator.hpp"
#include "foldosc/param_table.hpp"
#include "foldosc/trace_io.hpp"

namespace foldosc {

class UnknownParameterError : public std::runtime_error {
 public:
  explicit UnknownParameterError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SweepPoint {
  double value = 0.0;
  std::optional<SimSummary> summary;  // empty when the point failed to simulate
};

inline std::vector<double> sweep_values(double min, double max, int count) {
  std::vector<double> vals;
  if (count < 1) throw std::invalid_argument("sweep: count must be >= 1");
  if (count == 1) {
    vals.push_back(min);
    return vals;
  }
  for (int i = 0; i < count; ++i) {
    vals.push_back(min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return vals;
}

// One simulation per grid point; a point whose config fails validation or
// whose run diverges yields an empty summary instead of aborting the sweep.
inline std::vector<SweepPoint> run_sweep(const SimConfig& base, const std::string& param,
                                         double min, double max, int count) {
  const ParamAccessor* p = find_param(param);
  if (p == nullptr) {
    std::string msg = "unknown sweep parameter '" + param + "'; known:";
    for (const auto& n : param_names(false)) msg += " " + n;
    throw UnknownParameterError(msg);
  }
  std::vector<SweepPoint> points;
  for (const double v : sweep_values(min, max, count)) {
    SweepPoint pt;
    pt.value = v;
    SimConfig cfg = base;
    p->set(cfg, v);
    try {
      const Trace trace = simulate(cfg);
      pt.summary = summarize(trace, cfg.beam.beam_tg_c,
                             std::min(cfg.actuator_a.actuator_tg_c, cfg.actuator_b.actuator_tg_c));
    } catch (const std::invalid_argument&) {
    } catch (const SimulationError&) {
    }
    points.push_back(std::move(pt));
  }
  return points;
}

// Empty cells mark quantities the point does not define (no mean period
// before three events, nothing at all for failed points).
inline std::string sweep_csv(const std::string& param, const std::vector<SweepPoint>& points) {
  std::string out = param + ",mean_period_s,n_full_cycles,max_temp_a_c,max_temp_b_c\n";
  for (const auto& pt : points) {
    out += format_number(pt.value);
    out += ',';
    if (pt.summary) {
      if (pt.summary->mean_period_s) out += format_number(*pt.summary->mean_period_s);
      out += ',';
      out += std::to_string(pt.summary->n_full_cycles);
      out += ',';
      out += format_number(pt.summary->max_temp_a_c);
      out += ',';
      out += format_number(pt.summary->max_temp_b_c);
    } else {
      out += ",,,";
    }
    out += '\n';
  }
  return out;
}

}  // namespace foldosc
