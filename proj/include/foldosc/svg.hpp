#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "foldosc/config.hpp"
#include "foldosc/integrator.hpp"

namespace foldosc {

namespace detail {

// Two-decimal fixed coordinates keep the file small and byte-stable.
inline std::string coord(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

inline std::string tick_label(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 4);
  return std::string(buf, res.ptr);
}

struct Panel {
  double px, py, pw, ph;  // plot area in canvas units
  double x0, x1, y0, y1;  // data ranges

  double mx(double x) const { return px + (x - x0) / (x1 - x0) * pw; }
  double my(double y) const { return py + ph - (y - y0) / (y1 - y0) * ph; }
};

inline void axes(std::string& svg, const Panel& p, int x_ticks, int y_ticks,
                 const std::string& x_label, const std::string& y_label) {
  svg += "<rect x=\"" + coord(p.px) + "\" y=\"" + coord(p.py) + "\" width=\"" + coord(p.pw) +
         "\" height=\"" + coord(p.ph) + "\" class=\"frame\"/>\n";
  for (int i = 0; i <= x_ticks; ++i) {
    const double x = p.x0 + (p.x1 - p.x0) * i / x_ticks;
    const double cx = p.mx(x);
    svg += "<line x1=\"" + coord(cx) + "\" y1=\"" + coord(p.py) + "\" x2=\"" + coord(cx) +
           "\" y2=\"" + coord(p.py + p.ph) + "\" class=\"grid\"/>\n";
    svg += "<text x=\"" + coord(cx) + "\" y=\"" + coord(p.py + p.ph + 16.0) +
           "\" class=\"tick\" text-anchor=\"middle\">" + tick_label(x) + "</text>\n";
  }
  for (int i = 0; i <= y_ticks; ++i) {
    const double y = p.y0 + (p.y1 - p.y0) * i / y_ticks;
    const double cy = p.my(y);
    svg += "<line x1=\"" + coord(p.px) + "\" y1=\"" + coord(cy) + "\" x2=\"" +
           coord(p.px + p.pw) + "\" y2=\"" + coord(cy) + "\" class=\"grid\"/>\n";
    svg += "<text x=\"" + coord(p.px - 6.0) + "\" y=\"" + coord(cy + 4.0) +
           "\" class=\"tick\" text-anchor=\"end\">" + tick_label(y) + "</text>\n";
  }
  svg += "<text x=\"" + coord(p.px + p.pw / 2.0) + "\" y=\"" + coord(p.py + p.ph + 34.0) +
         "\" class=\"label\" text-anchor=\"middle\">" + x_label + "</text>\n";
  svg += "<text x=\"" + coord(p.px - 44.0) + "\" y=\"" + coord(p.py + p.ph / 2.0) +
         "\" class=\"label\" text-anchor=\"middle\" transform=\"rotate(-90 " +
         coord(p.px - 44.0) + " " + coord(p.py + p.ph / 2.0) + ")\">" + y_label + "</text>\n";
}

inline void polyline(std::string& svg, const std::vector<std::pair<double, double>>& pts,
                     const Panel& p, const std::string& cls) {
  if (pts.empty()) return;
  svg += "<polyline class=\"" + cls + "\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) svg += ' ';
    svg += coord(p.mx(pts[i].first)) + "," + coord(p.my(pts[i].second));
  }
  svg += "\"/>\n";
}

}  // namespace detail

// Self-contained two-panel figure: actuator temperatures on top, loop
// currents below, with the snap events visible as the current hand-offs.
// Output depends only on the trace and config, so repeated runs are
// byte-identical.
inline std::string plot_svg(const Trace& trace, const SimConfig& cfg) {
  const double width = 900.0, height = 640.0;
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 900 640\">\n";
  svg += "<style>\n"
         ".bg{fill:#ffffff;}\n"
         ".frame{fill:none;stroke:#333333;stroke-width:1;}\n"
         ".grid{stroke:#dddddd;stroke-width:0.5;}\n"
         ".tick{font:11px sans-serif;fill:#444444;}\n"
         ".label{font:13px sans-serif;fill:#222222;}\n"
         ".title{font:15px sans-serif;fill:#111111;}\n"
         ".line_a{fill:none;stroke:#c0392b;stroke-width:1.5;}\n"
         ".line_b{fill:none;stroke:#2471a3;stroke-width:1.5;}\n"
         ".tg{stroke:#888888;stroke-width:1;stroke-dasharray:5 4;}\n"
         "</style>\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + detail::coord(width) + "\" height=\"" +
         detail::coord(height) + "\" class=\"bg\"/>\n";

  if (trace.rows.empty()) {
    svg += "<text x=\"450\" y=\"320\" class=\"title\" text-anchor=\"middle\">empty trace</text>\n";
    svg += "</svg>\n";
    return svg;
  }

  const double t0 = trace.rows.front().time_s;
  const double t1 = std::max(trace.rows.back().time_s, t0 + 1e-9);

  double temp_lo = trace.rows.front().temp_a_c, temp_hi = temp_lo;
  for (const auto& r : trace.rows) {
    temp_lo = std::min({temp_lo, r.temp_a_c, r.temp_b_c});
    temp_hi = std::max({temp_hi, r.temp_a_c, r.temp_b_c});
  }
  temp_lo = std::min(temp_lo, cfg.environment.ambient_c) - 2.0;
  // keep the glass-transition reference visible even for healthy runs
  temp_hi = std::max(temp_hi, cfg.beam.beam_tg_c) + 2.0;

  detail::Panel temps{70.0, 40.0, 790.0, 240.0, t0, t1, temp_lo, temp_hi};
  detail::Panel currents{70.0, 370.0, 790.0, 200.0, t0, t1, -0.05 * std::max(cfg.circuit.source_current_a, 1e-3),
                         std::max(cfg.circuit.source_current_a, 1e-3) * 1.15};

  svg += "<text x=\"70\" y=\"26\" class=\"title\">actuator temperatures</text>\n";
  detail::axes(svg, temps, 6, 5, "time [s]", "temperature [C]");
  svg += "<text x=\"70\" y=\"356\" class=\"title\">loop currents</text>\n";
  detail::axes(svg, currents, 6, 4, "time [s]", "current [A]");

  // glass transition marker
  if (cfg.beam.beam_tg_c > temps.y0 && cfg.beam.beam_tg_c < temps.y1) {
    const double y = temps.my(cfg.beam.beam_tg_c);
    svg += "<line x1=\"" + detail::coord(temps.px) + "\" y1=\"" + detail::coord(y) + "\" x2=\"" +
           detail::coord(temps.px + temps.pw) + "\" y2=\"" + detail::coord(y) + "\" class=\"tg\"/>\n";
    svg += "<text x=\"" + detail::coord(temps.px + temps.pw - 4.0) + "\" y=\"" +
           detail::coord(y - 4.0) + "\" class=\"tick\" text-anchor=\"end\">beam Tg</text>\n";
  }

  const size_t stride = std::max<size_t>(1, trace.rows.size() / 1500);
  std::vector<std::pair<double, double>> pa, pb;
  for (size_t i = 0; i < trace.rows.size(); i += stride) {
    pa.emplace_back(trace.rows[i].time_s, trace.rows[i].temp_a_c);
    pb.emplace_back(trace.rows[i].time_s, trace.rows[i].temp_b_c);
  }
  if ((trace.rows.size() - 1) % stride != 0) {
    pa.emplace_back(trace.rows.back().time_s, trace.rows.back().temp_a_c);
    pb.emplace_back(trace.rows.back().time_s, trace.rows.back().temp_b_c);
  }
  detail::polyline(svg, pa, temps, "line_a");
  detail::polyline(svg, pb, temps, "line_b");

  // currents as exact square waves built from the event list
  const double amp = cfg.circuit.source_current_a;
  auto square = [&](bool chan_a) {
    std::vector<std::pair<double, double>> pts;
    BeamSide side = trace.rows.front().beam_side;
    auto level = [&](BeamSide s) {
      return (chan_a ? s == BeamSide::A : s == BeamSide::B) ? amp : 0.0;
    };
    pts.emplace_back(t0, level(side));
    for (const auto& e : trace.events) {
      if (e.time_s < t0) continue;
      pts.emplace_back(e.time_s, level(e.side_before));
      pts.emplace_back(e.time_s, level(e.side_after));
      side = e.side_after;
    }
    pts.emplace_back(t1, level(side));
    return pts;
  };
  detail::polyline(svg, square(true), currents, "line_a");
  detail::polyline(svg, square(false), currents, "line_b");

  // legend
  svg += "<line x1=\"700\" y1=\"22\" x2=\"730\" y2=\"22\" class=\"line_a\"/>\n";
  svg += "<text x=\"736\" y=\"26\" class=\"label\">actuator A</text>\n";
  svg += "<line x1=\"790\" y1=\"22\" x2=\"820\" y2=\"22\" class=\"line_b\"/>\n";
  svg += "<text x=\"826\" y=\"26\" class=\"label\">actuator B</text>\n";

  svg += "</svg>\n";
  return svg;
}

}  // namespace foldosc
