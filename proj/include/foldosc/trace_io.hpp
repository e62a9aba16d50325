#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "foldosc/analysis.hpp"
#include "foldosc/integrator.hpp"

namespace foldosc {

// Fixed-point decimal with (about) nine significant digits, locale
// independent, identical on every run. The decimal count is derived from the
// magnitude and clamped to [0, 12], so both event times and micrometer strokes
// keep their resolution. Zero prints as 0.000000000.
inline std::string format_number(double v, int significant = 9) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // collapse negative zero
  int decimals = significant;
  const double a = std::abs(v);
  if (a > 0.0) {
    const int mag = static_cast<int>(std::floor(std::log10(a)));
    decimals = significant - 1 - mag;
    if (decimals < 0) decimals = 0;
    if (decimals > 12) decimals = 12;
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

inline std::string trace_csv(const Trace& trace) {
  std::string out = "time_s,temp_a_c,temp_b_c,current_a_a,current_b_a,beam_side,stroke_a_m,stroke_b_m\n";
  for (const auto& r : trace.rows) {
    out += format_number(r.time_s);
    out += ',';
    out += format_number(r.temp_a_c);
    out += ',';
    out += format_number(r.temp_b_c);
    out += ',';
    out += format_number(r.current_a_a);
    out += ',';
    out += format_number(r.current_b_a);
    out += ',';
    out += side_letter(r.beam_side);
    out += ',';
    out += format_number(r.stroke_a_m);
    out += ',';
    out += format_number(r.stroke_b_m);
    out += '\n';
  }
  return out;
}

inline std::string events_csv(const Trace& trace) {
  std::string out = "index,time_s,side_before,side_after\n";
  for (size_t i = 0; i < trace.events.size(); ++i) {
    const auto& e = trace.events[i];
    out += std::to_string(i);
    out += ',';
    out += format_number(e.time_s);
    out += ',';
    out += side_letter(e.side_before);
    out += ',';
    out += side_letter(e.side_after);
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::string join_numbers(const std::vector<double>& vals) {
  if (vals.empty()) return "none";
  std::string out;
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) out += ',';
    out += format_number(vals[i]);
  }
  return out;
}

}  // namespace detail

inline std::string summary_txt(const SimSummary& s) {
  auto opt = [](const std::optional<double>& v) {
    return v ? format_number(*v) : std::string("none");
  };
  std::string out;
  out += "n_snap_events=" + std::to_string(s.n_snap_events) + "\n";
  out += "n_full_cycles=" + std::to_string(s.n_full_cycles) + "\n";
  out += "half_cycle_fraction=" + format_number(s.half_cycle_fraction) + "\n";
  out += "total_cycles=" + format_number(s.total_cycles()) + "\n";
  out += "mean_period_s=" + opt(s.mean_period_s) + "\n";
  out += "periods_s=" + detail::join_numbers(s.periods_s) + "\n";
  out += "half_periods_s=" + detail::join_numbers(s.half_periods_s) + "\n";
  out += "stall_time_s=" + opt(s.stall_time_s) + "\n";
  out += "max_temp_a_c=" + format_number(s.max_temp_a_c) + "\n";
  out += "max_temp_b_c=" + format_number(s.max_temp_b_c) + "\n";
  out += "mean_temp_a_c=" + format_number(s.mean_temp_a_c) + "\n";
  out += "mean_temp_b_c=" + format_number(s.mean_temp_b_c) + "\n";
  out += "beam_overheat_flag=" + std::string(s.beam_overheat_flag ? "true" : "false") + "\n";
  out += "actuator_overheat_flag=" + std::string(s.actuator_overheat_flag ? "true" : "false") + "\n";
  return out;
}

}  // namespace foldosc
