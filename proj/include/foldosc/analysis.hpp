#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "foldosc/integrator.hpp"

namespace foldosc {

struct SimSummary {
  int n_snap_events = 0;
  int n_full_cycles = 0;           // every two events close one cycle
  double half_cycle_fraction = 0.0;  // 0.5 when a trailing odd event remains
  std::optional<double> mean_period_s;
  std::vector<double> periods_s;       // same-direction event gaps, e[i+2]-e[i]
  std::vector<double> half_periods_s;  // consecutive event gaps
  std::optional<double> stall_time_s;
  double max_temp_a_c = 0.0;
  double max_temp_b_c = 0.0;
  double mean_temp_a_c = 0.0;
  double mean_temp_b_c = 0.0;
  bool beam_overheat_flag = false;
  bool actuator_overheat_flag = false;

  double total_cycles() const { return n_full_cycles + half_cycle_fraction; }
};

// Aggregates one finished trace. Periods need at least three events; the run
// counts as stalled when the horizon extends at least two mean periods past
// the last event. Mean temperatures cover the oscillating window (up to the
// last event), maxima the whole trace.
inline SimSummary summarize(const Trace& trace, double beam_tg_c, double actuator_tg_c) {
  if (trace.rows.empty()) throw std::invalid_argument("summarize: trace has no rows");

  SimSummary s;
  const auto& ev = trace.events;
  s.n_snap_events = static_cast<int>(ev.size());
  s.n_full_cycles = s.n_snap_events / 2;
  s.half_cycle_fraction = (s.n_snap_events % 2) ? 0.5 : 0.0;

  for (size_t i = 0; i + 1 < ev.size(); ++i) {
    s.half_periods_s.push_back(ev[i + 1].time_s - ev[i].time_s);
  }
  for (size_t i = 0; i + 2 < ev.size(); ++i) {
    s.periods_s.push_back(ev[i + 2].time_s - ev[i].time_s);
  }
  if (!s.periods_s.empty()) {
    s.mean_period_s = std::accumulate(s.periods_s.begin(), s.periods_s.end(), 0.0) /
                      static_cast<double>(s.periods_s.size());
  }
  if (!ev.empty() && s.mean_period_s) {
    const double last = ev.back().time_s;
    if (trace.rows.back().time_s - last >= 2.0 * *s.mean_period_s) s.stall_time_s = last;
  }

  const double window_end = ev.empty() ? trace.rows.back().time_s : ev.back().time_s;
  double sum_a = 0.0, sum_b = 0.0;
  size_t n_window = 0;
  s.max_temp_a_c = trace.rows.front().temp_a_c;
  s.max_temp_b_c = trace.rows.front().temp_b_c;
  for (const auto& r : trace.rows) {
    s.max_temp_a_c = std::max(s.max_temp_a_c, r.temp_a_c);
    s.max_temp_b_c = std::max(s.max_temp_b_c, r.temp_b_c);
    if (r.time_s <= window_end + 1e-12) {
      sum_a += r.temp_a_c;
      sum_b += r.temp_b_c;
      ++n_window;
    }
  }
  s.mean_temp_a_c = sum_a / static_cast<double>(n_window);
  s.mean_temp_b_c = sum_b / static_cast<double>(n_window);
  const double hottest = std::max(s.max_temp_a_c, s.max_temp_b_c);
  s.beam_overheat_flag = hottest > beam_tg_c;
  s.actuator_overheat_flag = hottest > actuator_tg_c;
  return s;
}

// Phase shift between the two loop currents as a fraction of one period.
// The on/off indicators are sampled on a phase-warped grid (a fixed number of
// samples per cycle, cycle boundaries at every second event) and circularly
// cross-correlated; the correlation peak forms a plateau whose circular
// midpoint is returned. Warping makes each cycle contribute a mismatch
// profile symmetric about half a period, so a strictly alternating pair
// reports 0.5 regardless of duty asymmetry or period drift, while identical
// channels report 0.
inline double phase_shift(const Trace& trace) {
  const auto& ev = trace.events;
  if (ev.size() < 4) {
    throw std::invalid_argument("phase_shift: need at least two full cycles (4 events)");
  }
  if (trace.rows.size() < 2) {
    throw std::invalid_argument("phase_shift: need at least two trace rows");
  }

  // Whole periods between events 0 and 2k; long runs are capped to keep the
  // correlation cheap without touching the result.
  int64_t k = static_cast<int64_t>((ev.size() - 1) / 2);
  k = std::min<int64_t>(k, 12);
  const double start = ev.front().time_s;
  const double span = ev[static_cast<size_t>(2 * k)].time_s - start;
  const double period = span / static_cast<double>(k);

  const auto& rows = trace.rows;
  const double dt = rows[1].time_s - rows[0].time_s;
  const int64_t lags = std::clamp<int64_t>(std::llround(2.0 * period / dt), 16, 16384);
  const int64_t n = k * lags;

  auto sample = [&](double t, bool chan_a) -> int {
    const double pos = (t - rows.front().time_s) / dt;
    int64_t idx = static_cast<int64_t>(std::floor(pos + 1e-9));
    idx = std::clamp<int64_t>(idx, 0, static_cast<int64_t>(rows.size()) - 1);
    const double cur = chan_a ? rows[static_cast<size_t>(idx)].current_a_a
                              : rows[static_cast<size_t>(idx)].current_b_a;
    return cur > 0.0 ? 1 : -1;
  };

  std::vector<int> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
  for (int64_t i = 0; i < k; ++i) {
    const double t0 = ev[static_cast<size_t>(2 * i)].time_s;
    const double t1 = ev[static_cast<size_t>(2 * i + 2)].time_s;
    for (int64_t j = 0; j < lags; ++j) {
      const double t = t0 + (t1 - t0) * static_cast<double>(j) / static_cast<double>(lags);
      a[static_cast<size_t>(i * lags + j)] = sample(t, true);
      b[static_cast<size_t>(i * lags + j)] = sample(t, false);
    }
  }

  std::vector<int> bb(static_cast<size_t>(2 * n));
  std::copy(b.begin(), b.end(), bb.begin());
  std::copy(b.begin(), b.end(), bb.begin() + n);
  std::vector<int64_t> score(static_cast<size_t>(lags), 0);
  for (int64_t l = 0; l < lags; ++l) {
    int64_t acc = 0;
    const int* pb = bb.data() + l;
    for (int64_t j = 0; j < n; ++j) {
      acc += a[static_cast<size_t>(j)] * pb[j];
    }
    score[static_cast<size_t>(l)] = acc;
  }

  const int64_t best = *std::max_element(score.begin(), score.end());
  std::vector<int64_t> peaks;
  for (int64_t l = 0; l < lags; ++l) {
    if (score[static_cast<size_t>(l)] == best) peaks.push_back(l);
  }
  if (static_cast<int64_t>(peaks.size()) == lags) return 0.5;  // no phase information

  // Midpoint of the peak plateau on the circle: the plateau is the complement
  // of the largest gap between consecutive peaks.
  int64_t gap_at = 0;
  int64_t largest = -1;
  for (size_t i = 0; i < peaks.size(); ++i) {
    const int64_t next = peaks[(i + 1) % peaks.size()];
    const int64_t gap = (next - peaks[i] + lags) % lags == 0
                            ? lags
                            : (next - peaks[i] + lags) % lags;
    if (gap > largest) {
      largest = gap;
      gap_at = static_cast<int64_t>(i);
    }
  }
  const int64_t arc_start = peaks[(static_cast<size_t>(gap_at) + 1) % peaks.size()];
  const int64_t arc_end = peaks[static_cast<size_t>(gap_at)];
  const int64_t arc_len = (arc_end - arc_start + lags) % lags;
  const double mid = std::fmod(static_cast<double>(arc_start) + 0.5 * static_cast<double>(arc_len),
                               static_cast<double>(lags));
  return mid / static_cast<double>(lags);
}

}  // namespace foldosc
