#pragma once

// CSV and SVG emission for sweep tables, and the key = value config format.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "catlab/errors.hpp"
#include "catlab/mode_integrals.hpp"
#include "catlab/sweep.hpp"

namespace catlab {

inline constexpr const char* kCsvHeader =
    "curve_id,axis_name,axis_value,eta1_re,eta1_im,eta2_re,delta_gamma,p_plus,p_minus,p_excite,n_mean,flags";

/// Shortest decimal that parses back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) throw ConfigError("not a number: '" + std::string(text) + "'");
  return value;
}

namespace detail {

inline void check_csv_field(const std::string& field) {
  if (field.find_first_of(",\n\r\"") != std::string::npos) {
    throw ConfigError("CSV field may not contain ',', '\"' or newlines: '" + field + "'");
  }
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = line.find(sep, pos);
    out.push_back(line.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace detail

inline std::string csv_text(const SweepTable& table) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const SweepRow& r : table) {
    detail::check_csv_field(r.curve_id);
    detail::check_csv_field(r.axis_name);
    detail::check_csv_field(r.flags);
    out += r.curve_id;
    out += ',';
    out += r.axis_name;
    for (double x : {r.axis_value, r.eta1_re, r.eta1_im, r.eta2_re, r.delta_gamma, r.p_plus, r.p_minus, r.p_excite,
                     r.n_mean}) {
      out += ',';
      out += format_double(x);
    }
    out += ',';
    out += r.flags;
    out += '\n';
  }
  return out;
}

inline void emit_csv(const SweepTable& table, const std::string& path) {
  const std::string text = csv_text(table);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: '" + path + "'");
}

inline SweepTable parse_csv_text(std::string_view text) {
  SweepTable table;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (header) {
      if (line != kCsvHeader) throw ConfigError("unexpected CSV header");
      header = false;
      continue;
    }
    const auto f = detail::split(line, ',');
    if (f.size() != 12) throw ConfigError("CSV row has " + std::to_string(f.size()) + " fields, expected 12");
    SweepRow r;
    r.curve_id = f[0];
    r.axis_name = f[1];
    double* slots[] = {&r.axis_value, &r.eta1_re, &r.eta1_im, &r.eta2_re, &r.delta_gamma,
                       &r.p_plus,     &r.p_minus, &r.p_excite, &r.n_mean};
    for (std::size_t i = 0; i < 9; ++i) *slots[i] = parse_double(f[i + 2]);
    r.flags = f[11];
    table.push_back(std::move(r));
  }
  if (header) throw ConfigError("CSV has no header");
  return table;
}

inline SweepTable parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv_text(buf.str());
}

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

inline std::string svg_number(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Line plot of delta_gamma against the axis, one polyline per curve in
/// first-appearance order. Non-finite points are skipped.
inline std::string svg_text(const SweepTable& table) {
  if (table.empty()) throw EmptyTable("cannot plot an empty table");
  std::vector<std::string> ids;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const SweepRow& r : table) {
    if (!series.count(r.curve_id)) ids.push_back(r.curve_id);
    auto& pts = series[r.curve_id];
    if (!std::isfinite(r.axis_value) || !std::isfinite(r.delta_gamma)) continue;
    pts.emplace_back(r.axis_value, r.delta_gamma);
    xmin = std::min(xmin, r.axis_value);
    xmax = std::max(xmax, r.axis_value);
    ymin = std::min(ymin, r.delta_gamma);
    ymax = std::max(ymax, r.delta_gamma);
  }
  if (!std::isfinite(xmin)) {
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) {
    const double pad = ymin == 0.0 ? 1.0 : 0.05 * std::abs(ymin);
    ymin -= pad;
    ymax += pad;
  }

  constexpr double kWidth = 800.0;
  constexpr double kHeight = 500.0;
  constexpr double kLeft = 90.0;
  constexpr double kRight = 200.0;
  constexpr double kTop = 30.0;
  constexpr double kBottom = 60.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  auto sy = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * plot_h; };
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

  using detail::svg_number;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << svg_number(kLeft + plot_w / 2) << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-size=\"14\">" << detail::xml_escape(table.front().axis_name) << "</text>\n";
  out << "<text x=\"20\" y=\"" << svg_number(kTop + plot_h / 2) << "\" text-anchor=\"middle\" font-size=\"14\" "
      << "transform=\"rotate(-90 20 " << svg_number(kTop + plot_h / 2) << ")\">delta_gamma</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = xmin + (xmax - xmin) * k / 4.0;
    const double fy = ymin + (ymax - ymin) * k / 4.0;
    out << "<text x=\"" << svg_number(sx(fx)) << "\" y=\"" << svg_number(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\" font-size=\"11\">" << detail::xml_escape(format_double(fx)) << "</text>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << svg_number(sy(fy) + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << detail::xml_escape(format_double(fy)) << "</text>\n";
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const char* color = kColors[i % (sizeof(kColors) / sizeof(kColors[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" data-curve=\""
        << detail::xml_escape(ids[i]) << "\" points=\"";
    bool first = true;
    for (const auto& [x, y] : series[ids[i]]) {
      if (!first) out << ' ';
      out << svg_number(sx(x)) << ',' << svg_number(sy(y));
      first = false;
    }
    out << "\"/>\n";
  }
  out << "<g font-size=\"11\">\n";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const char* color = kColors[i % (sizeof(kColors) / sizeof(kColors[0]))];
    const double y = kTop + 10 + 16.0 * static_cast<double>(i);
    const double x = kWidth - kRight + 15;
    out << "<line x1=\"" << x << "\" y1=\"" << svg_number(y) << "\" x2=\"" << x + 20 << "\" y2=\"" << svg_number(y)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << x + 26 << "\" y=\"" << svg_number(y + 4) << "\">" << detail::xml_escape(ids[i])
        << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

inline void emit_svg(const SweepTable& table, const std::string& path) {
  const std::string text = svg_text(table);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write failed: '" + path + "'");
}

/// key = value lines; '#' starts a comment. Repeated keys accumulate in order.
using ConfigMap = std::multimap<std::string, std::string>;

inline ConfigMap parse_config_text(std::string_view text) {
  ConfigMap out;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    out.emplace(key, value);
  }
  return out;
}

inline ConfigMap parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace detail {

/// "a:b:n"
inline void apply_range(SweepSpec& spec, std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError("range must be start:stop:points, got '" + std::string(text) + "'");
  spec.start = parse_double(trim(parts[0]));
  spec.stop = parse_double(trim(parts[1]));
  const double n = parse_double(trim(parts[2]));
  if (!(n >= 2.0) || n != std::floor(n) || n > 1e7) throw ConfigError("range needs an integer point count >= 2");
  spec.points = static_cast<std::size_t>(n);
}

inline bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("not a boolean: '" + s + "'");
}

/// "id: key=value, key=value" with keys alpha_mag, theta, psi, squeeze_r, squeeze_delta.
inline Curve parse_curve(std::string_view text) {
  const auto colon = text.find(':');
  Curve c;
  c.id = std::string(trim(text.substr(0, colon)));
  if (c.id.empty()) throw ConfigError("curve needs an id");
  if (colon == std::string_view::npos) return c;
  for (std::string_view item : split(text.substr(colon + 1), ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("curve override must be key=value: '" + std::string(item) + "'");
    const std::string key(trim(item.substr(0, eq)));
    const double value = parse_double(trim(item.substr(eq + 1)));
    if (key == "alpha_mag") c.alpha_mag = value;
    else if (key == "theta") c.theta = value;
    else if (key == "psi") c.psi = value;
    else if (key == "squeeze_r") c.squeeze_r = value;
    else if (key == "squeeze_delta") c.squeeze_delta = value;
    else throw ConfigError("unknown curve key '" + key + "'");
  }
  return c;
}

inline CatKind parse_class(std::string_view name) {
  for (CatKind k : {CatKind::Even, CatKind::Odd, CatKind::YurkeStolerPlus, CatKind::YurkeStolerMinus}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown cat class '" + std::string(name) + "'");
}

}  // namespace detail

/// Builds a sweep from config keys on top of the defaults (|alpha| axis,
/// the four special classes, the SI operating point).
inline SweepSpec sweep_from_config(const ConfigMap& cfg) {
  static const std::vector<std::string> known = {
      "axis",      "range",        "alpha_mag", "theta",      "psi",       "beta",      "beta_mag",
      "beta_phase", "weight_a",    "weight_b",  "squeeze_r",  "squeeze_delta", "populated_mode", "length",
      "speed",     "gap",          "coupling",  "coupling_ratio", "length_m", "speed_mps", "gap_hz",
      "tune_speed", "resonant",    "vacuum_tol", "curves",    "curve"};
  for (const auto& [key, value] : cfg) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key '" + key + "'");
  }
  auto last = [&](const std::string& key) -> const std::string* {
    const auto range = cfg.equal_range(key);
    if (range.first == range.second) return nullptr;
    return &std::prev(range.second)->second;
  };
  auto number = [&](const std::string& key, double fallback) {
    const std::string* v = last(key);
    return v ? parse_double(*v) : fallback;
  };

  SweepSpec spec = figure_preset("fig3a");
  if (const auto* v = last("axis")) spec.axis = parse_axis(*v);
  if (const auto* v = last("range")) detail::apply_range(spec, *v);

  PointParams& p = spec.fixed;
  p.alpha_mag = number("alpha_mag", p.alpha_mag);
  p.theta = number("theta", p.theta);
  p.psi = number("psi", p.psi);
  p.weight_a = number("weight_a", p.weight_a);
  p.weight_b = number("weight_b", p.weight_b);
  p.squeeze_r = number("squeeze_r", p.squeeze_r);
  p.squeeze_delta = number("squeeze_delta", p.squeeze_delta);
  if (const auto* v = last("beta")) {
    if (*v == "conjugate") p.beta_mode = BetaMode::Conjugate;
    else if (*v == "negate") p.beta_mode = BetaMode::Negate;
    else if (*v == "explicit") p.beta_mode = BetaMode::Explicit;
    else throw ConfigError("beta must be conjugate, negate or explicit");
  }
  p.beta_mag = number("beta_mag", p.beta_mag);
  p.beta_phase = number("beta_phase", p.beta_phase);
  spec.vacuum_tol = number("vacuum_tol", spec.vacuum_tol);

  const bool natural = last("length") || last("speed") || last("gap") || last("coupling");
  const bool si = last("length_m") || last("speed_mps") || last("gap_hz");
  if (natural && si) throw ConfigError("mix of natural-unit and SI cavity keys");
  const int mode = static_cast<int>(number("populated_mode", 2.0));
  if (mode < 1 || number("populated_mode", 2.0) != mode) throw ConfigError("populated_mode must be a positive integer");
  try {
    if (natural) {
      const double length = number("length", 1.0);
      const bool resonant = last("resonant") ? detail::parse_bool(*last("resonant")) : !last("gap");
      const double gap = resonant ? mode * kPi / length : number("gap", mode * kPi / length);
      double speed = number("speed", 0.4);
      if (last("tune_speed") && detail::parse_bool(*last("tune_speed"))) {
        speed = mode / std::max(1.0, std::round(mode / speed));
      }
      const double coupling = last("coupling") ? number("coupling", 0.0) : number("coupling_ratio", 1e-4) * gap;
      spec.cavity = CavityProbeConfig(length, mode, speed, gap, coupling);
    } else {
      SiProbeParameters sip;
      sip.mode = mode;
      sip.gap_hz = number("gap_hz", sip.gap_hz);
      sip.speed_mps = number("speed_mps", sip.speed_mps);
      sip.coupling_ratio = number("coupling_ratio", sip.coupling_ratio);
      const bool resonant = last("resonant") ? detail::parse_bool(*last("resonant")) : !last("length_m");
      sip.length_m = resonant ? 0.0 : number("length_m", 0.0);
      if (!resonant && !(sip.length_m > 0.0)) throw ConfigError("resonant = false needs length_m");
      if (last("tune_speed")) sip.tune_speed = detail::parse_bool(*last("tune_speed"));
      spec.cavity = from_si(sip);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("cavity: ") + e.what());
  }

  std::vector<Curve> curves;
  if (const auto* v = last("curves")) {
    for (std::string_view name : detail::split(*v, ',')) {
      name = detail::trim(name);
      if (!name.empty()) curves.push_back(class_curve(detail::parse_class(name)));
    }
  }
  const auto listed = cfg.equal_range("curve");
  for (auto it = listed.first; it != listed.second; ++it) curves.push_back(detail::parse_curve(it->second));
  if (!curves.empty()) spec.curves = std::move(curves);

  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

}  // namespace catlab
