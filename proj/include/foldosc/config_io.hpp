#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "foldosc/calibration.hpp"
#include "foldosc/config.hpp"
#include "foldosc/param_table.hpp"

namespace foldosc {

class ConfigParseError : public std::runtime_error {
 public:
  explicit ConfigParseError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

struct KvLine {
  std::string section;
  std::string key;
  std::string value;
  int line_no = 0;
};

// Shared low-level reader for all three text formats: [section] headers,
// key = value pairs, # comments.
inline std::vector<KvLine> parse_kv(const std::string& text, const std::string& source) {
  std::vector<KvLine> out;
  std::string section;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t nl = text.find('\n', pos);
    std::string_view line(text.data() + pos, (nl == std::string::npos ? text.size() : nl) - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigParseError(source + ":" + std::to_string(line_no) + ": malformed section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigParseError(source + ":" + std::to_string(line_no) + ": expected key = value");
    }
    KvLine kv;
    kv.section = section;
    kv.key = std::string(trim(line.substr(0, eq)));
    kv.value = std::string(trim(line.substr(eq + 1)));
    kv.line_no = line_no;
    if (kv.key.empty() || kv.value.empty()) {
      throw ConfigParseError(source + ":" + std::to_string(line_no) + ": empty key or value");
    }
    out.push_back(std::move(kv));
  }
  return out;
}

inline double parse_number(const KvLine& kv, const std::string& source) {
  const std::string& s = kv.value;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigParseError(source + ":" + std::to_string(kv.line_no) + ": '" + s +
                           "' is not a number (key " + kv.key + ")");
  }
  return v;
}

// Shortest round-trip form; used for canonical serialization and hashing.
inline std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 1469598103934665603ull;
  for (const char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

inline std::optional<std::string> read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Strict parse: unknown sections or keys are errors, so a typo cannot
// silently fall back to a default. Keys not present keep their defaults;
// unset initial temperatures start at ambient.
inline SimConfig parse_config(const std::string& text, const std::string& source = "config") {
  SimConfig cfg;
  cfg.horizon_s = 30.0;

  for (const auto& kv : detail::parse_kv(text, source)) {
    auto num = [&]() { return detail::parse_number(kv, source); };
    auto bad_key = [&]() {
      throw ConfigParseError(source + ":" + std::to_string(kv.line_no) + ": unknown key '" +
                             kv.key + "' in section [" + kv.section + "]");
    };

    if (kv.section == "sim") {
      if (kv.key == "step_s") cfg.step_s = num();
      else if (kv.key == "horizon_s") cfg.horizon_s = num();
      else if (kv.key == "event_tolerance_s") cfg.event_tolerance_s = num();
      else if (kv.key == "record_stride") cfg.record_stride = static_cast<int>(num());
      else bad_key();
    } else if (kv.section == "environment") {
      if (kv.key == "ambient_c") cfg.environment.ambient_c = num();
      else if (kv.key == "multiplier") cfg.environment.multiplier = num();
      else if (kv.key == "cooling") {
        if (kv.value == "standing_air") cfg.environment.mode = CoolingMode::StandingAir;
        else if (kv.value == "forced_air") cfg.environment.mode = CoolingMode::ForcedAir;
        else if (kv.value == "water") cfg.environment.mode = CoolingMode::Water;
        else {
          throw ConfigParseError(source + ":" + std::to_string(kv.line_no) +
                                 ": cooling must be standing_air, forced_air or water");
        }
      } else bad_key();
    } else if (kv.section == "actuator_a" || kv.section == "actuator_b") {
      ActuatorParams& act = kv.section == "actuator_a" ? cfg.actuator_a : cfg.actuator_b;
      if (kv.key == "resistance_ohm") act.resistance_ohm = num();
      else if (kv.key == "thermal_capacitance_j_per_k") act.thermal_capacitance_j_per_k = num();
      else if (kv.key == "conv_conductance_w_per_k") act.conv_conductance_w_per_k = num();
      else if (kv.key == "activation_temp_c") act.activation_temp_c = num();
      else if (kv.key == "contraction_coeff_m_per_k") act.contraction_coeff_m_per_k = num();
      else if (kv.key == "max_stroke_m") act.max_stroke_m = num();
      else if (kv.key == "drift_per_cycle_m") act.drift_per_cycle_m = num();
      else if (kv.key == "actuator_tg_c") act.actuator_tg_c = num();
      else bad_key();
    } else if (kv.section == "beam") {
      if (kv.key == "crit_stroke_a_m") cfg.beam.crit_stroke_a_m = num();
      else if (kv.key == "crit_stroke_b_m") cfg.beam.crit_stroke_b_m = num();
      else if (kv.key == "beam_tg_c") cfg.beam.beam_tg_c = num();
      else bad_key();
    } else if (kv.section == "circuit") {
      if (kv.key == "source_current_a") cfg.circuit.source_current_a = num();
      else if (kv.key == "contact_resistance_a_ohm") cfg.circuit.contact_resistance_a_ohm = num();
      else if (kv.key == "contact_resistance_b_ohm") cfg.circuit.contact_resistance_b_ohm = num();
      else if (kv.key == "contact_heat_fraction") cfg.circuit.contact_heat_fraction = num();
      else bad_key();
    } else if (kv.section == "initial") {
      if (kv.key == "temp_a_c") cfg.initial_temp_a_c = num();
      else if (kv.key == "temp_b_c") cfg.initial_temp_b_c = num();
      else if (kv.key == "side") {
        if (kv.value == "A") cfg.initial_side = BeamSide::A;
        else if (kv.value == "B") cfg.initial_side = BeamSide::B;
        else {
          throw ConfigParseError(source + ":" + std::to_string(kv.line_no) +
                                 ": side must be A or B");
        }
      } else bad_key();
    } else {
      throw ConfigParseError(source + ":" + std::to_string(kv.line_no) + ": unknown section [" +
                             kv.section + "]");
    }
  }
  return cfg;
}

// Canonical text form: fixed section and key order, shortest number spelling.
// Two logically equal configs serialize to identical bytes, which is what the
// config hash relies on.
inline std::string serialize_config(const SimConfig& cfg) {
  std::string out;
  auto kv = [&](const char* key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += "\n";
  };
  auto num = [&](const char* key, double v) { kv(key, detail::shortest(v)); };

  out += "[sim]\n";
  num("step_s", cfg.step_s);
  num("horizon_s", cfg.horizon_s);
  num("event_tolerance_s", cfg.event_tolerance_s);
  kv("record_stride", std::to_string(cfg.record_stride));

  out += "\n[environment]\n";
  num("ambient_c", cfg.environment.ambient_c);
  kv("cooling", cfg.environment.mode == CoolingMode::StandingAir ? "standing_air"
     : cfg.environment.mode == CoolingMode::ForcedAir            ? "forced_air"
                                                                 : "water");
  num("multiplier", cfg.environment.multiplier);

  auto actuator = [&](const char* name, const ActuatorParams& act) {
    out += "\n[";
    out += name;
    out += "]\n";
    num("resistance_ohm", act.resistance_ohm);
    num("thermal_capacitance_j_per_k", act.thermal_capacitance_j_per_k);
    num("conv_conductance_w_per_k", act.conv_conductance_w_per_k);
    num("activation_temp_c", act.activation_temp_c);
    num("contraction_coeff_m_per_k", act.contraction_coeff_m_per_k);
    num("max_stroke_m", act.max_stroke_m);
    num("drift_per_cycle_m", act.drift_per_cycle_m);
    num("actuator_tg_c", act.actuator_tg_c);
  };
  actuator("actuator_a", cfg.actuator_a);
  actuator("actuator_b", cfg.actuator_b);

  out += "\n[beam]\n";
  num("crit_stroke_a_m", cfg.beam.crit_stroke_a_m);
  num("crit_stroke_b_m", cfg.beam.crit_stroke_b_m);
  num("beam_tg_c", cfg.beam.beam_tg_c);

  out += "\n[circuit]\n";
  num("source_current_a", cfg.circuit.source_current_a);
  num("contact_resistance_a_ohm", cfg.circuit.contact_resistance_a_ohm);
  num("contact_resistance_b_ohm", cfg.circuit.contact_resistance_b_ohm);
  num("contact_heat_fraction", cfg.circuit.contact_heat_fraction);

  out += "\n[initial]\n";
  num("temp_a_c", cfg.initial_temp_a());
  num("temp_b_c", cfg.initial_temp_b());
  kv("side", cfg.initial_side == BeamSide::A ? "A" : "B");
  return out;
}

inline std::string config_hash_hex(const SimConfig& cfg) {
  const uint64_t h = detail::fnv1a64(serialize_config(cfg));
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) buf[15 - i] = digits[(h >> (4 * i)) & 0xf];
  buf[16] = '\0';
  return std::string(buf);
}

// Targets file: a [targets] section with the five timeline values and
// optional per-target weights (weight_<name>).
inline CalibrationTargets parse_targets(const std::string& text,
                                        const std::string& source = "targets") {
  CalibrationTargets t;
  for (const auto& kv : detail::parse_kv(text, source)) {
    if (!kv.section.empty() && kv.section != "targets") {
      throw ConfigParseError(source + ":" + std::to_string(kv.line_no) + ": unknown section [" +
                             kv.section + "]");
    }
    const double v = detail::parse_number(kv, source);
    if (kv.key == "first_snap_s") t.first_snap_s = v;
    else if (kv.key == "first_snapback_s") t.first_snapback_s = v;
    else if (kv.key == "mean_period_s") t.mean_period_s = v;
    else if (kv.key == "total_cycles") t.total_cycles = v;
    else if (kv.key == "stall_time_s") t.stall_time_s = v;
    else if (kv.key == "weight_first_snap") t.w_first_snap = v;
    else if (kv.key == "weight_first_snapback") t.w_first_snapback = v;
    else if (kv.key == "weight_mean_period") t.w_mean_period = v;
    else if (kv.key == "weight_total_cycles") t.w_total_cycles = v;
    else if (kv.key == "weight_stall_time") t.w_stall_time = v;
    else {
      throw ConfigParseError(source + ":" + std::to_string(kv.line_no) + ": unknown target '" +
                             kv.key + "'");
    }
  }
  return t;
}

// Bounds file: a [bounds] section, one "name = lower upper" line per fitted
// parameter. lower == upper pins the parameter at that value.
inline ParameterBounds parse_bounds(const std::string& text, const std::string& source = "bounds") {
  ParameterBounds bounds;
  for (const auto& kv : detail::parse_kv(text, source)) {
    if (!kv.section.empty() && kv.section != "bounds") {
      throw ConfigParseError(source + ":" + std::to_string(kv.line_no) + ": unknown section [" +
                             kv.section + "]");
    }
    const ParamAccessor* p = find_param(kv.key);
    if (p == nullptr || !p->calibratable) {
      std::string msg = source + ":" + std::to_string(kv.line_no) + ": '" + kv.key +
                        "' is not a calibratable parameter; known:";
      for (const auto& n : param_names(true)) msg += " " + n;
      throw ConfigParseError(msg);
    }
    std::istringstream ss(kv.value);
    double lo = 0.0, hi = 0.0;
    std::string extra;
    if (!(ss >> lo >> hi) || (ss >> extra)) {
      throw ConfigParseError(source + ":" + std::to_string(kv.line_no) +
                             ": expected two numbers (lower upper), got '" + kv.value + "'");
    }
    if (lo > hi) {
      throw ConfigParseError(source + ":" + std::to_string(kv.line_no) + ": lower bound " +
                             detail::shortest(lo) + " exceeds upper bound " + detail::shortest(hi));
    }
    bounds.push_back({kv.key, lo, hi});
  }
  return bounds;
}

}  // namespace foldosc
