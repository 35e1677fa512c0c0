#pragma once

// Parameter sweeps over one of (|alpha|, r, delta, theta, psi) with a set of
// overlaid curves, and the figure presets.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "catlab/core_states.hpp"
#include "catlab/errors.hpp"
#include "catlab/measurement.hpp"
#include "catlab/mode_integrals.hpp"

namespace catlab {

enum class Axis { AlphaMag, SqueezeR, SqueezeDelta, Theta, Psi };

inline std::string to_string(Axis axis) {
  switch (axis) {
    case Axis::AlphaMag:
      return "alpha_mag";
    case Axis::SqueezeR:
      return "squeeze_r";
    case Axis::SqueezeDelta:
      return "squeeze_delta";
    case Axis::Theta:
      return "theta";
    case Axis::Psi:
      return "psi";
  }
  return "unknown";
}

inline Axis parse_axis(const std::string& name) {
  for (Axis a : {Axis::AlphaMag, Axis::SqueezeR, Axis::SqueezeDelta, Axis::Theta, Axis::Psi}) {
    if (to_string(a) == name) return a;
  }
  throw ConfigError("unknown axis '" + name + "'");
}

/// How beta follows alpha at each point.
enum class BetaMode { Conjugate, Negate, Explicit };

/// Full parameter record of one sweep point.
struct PointParams {
  double alpha_mag = 1.0;
  double theta = kPi / 2.0;
  double psi = 0.0;
  BetaMode beta_mode = BetaMode::Conjugate;
  double beta_mag = 0.0;  // Explicit mode only
  double beta_phase = 0.0;
  double weight_a = 1.0;
  double weight_b = 1.0;
  double squeeze_r = 0.0;
  double squeeze_delta = 0.0;

  double& at(Axis axis) {
    switch (axis) {
      case Axis::AlphaMag:
        return alpha_mag;
      case Axis::SqueezeR:
        return squeeze_r;
      case Axis::SqueezeDelta:
        return squeeze_delta;
      case Axis::Theta:
        return theta;
      case Axis::Psi:
        break;
    }
    return psi;
  }

  CatParams cat() const {
    const CoherentLabel alpha(alpha_mag, theta);
    CoherentLabel beta;
    switch (beta_mode) {
      case BetaMode::Conjugate:
        beta = CoherentLabel(alpha_mag, -theta);
        break;
      case BetaMode::Negate:
        beta = CoherentLabel(alpha_mag, theta + kPi);
        break;
      case BetaMode::Explicit:
        beta = CoherentLabel(beta_mag, beta_phase);
        break;
    }
    return {alpha, beta, weight_a, weight_b, psi};
  }

  SqueezeParams squeeze() const { return {squeeze_r, squeeze_delta}; }
};

/// One overlaid curve: overrides applied to the fixed parameters.
struct Curve {
  std::string id;
  std::optional<double> alpha_mag;
  std::optional<double> theta;
  std::optional<double> psi;
  std::optional<double> squeeze_r;
  std::optional<double> squeeze_delta;

  PointParams apply(PointParams p) const {
    if (alpha_mag) p.alpha_mag = *alpha_mag;
    if (theta) p.theta = *theta;
    if (psi) p.psi = *psi;
    if (squeeze_r) p.squeeze_r = *squeeze_r;
    if (squeeze_delta) p.squeeze_delta = *squeeze_delta;
    return p;
  }
};

/// A curve for each special class, tagged with its class name.
inline Curve class_curve(CatKind kind) {
  Curve c;
  c.id = to_string(kind);
  c.psi = class_phase(kind);
  return c;
}

struct SweepSpec {
  Axis axis = Axis::AlphaMag;
  double start = 0.0;
  double stop = 1.0;
  std::size_t points = 2;
  PointParams fixed;
  CavityProbeConfig cavity = paper_si_config();
  double vacuum_tol = 1e-12;
  std::vector<Curve> curves;

  void validate() const {
    if (points < 2) throw ConfigError("a sweep needs at least 2 points");
    if (!(std::isfinite(start) && std::isfinite(stop) && start < stop)) throw ConfigError("sweep range needs start < stop");
    if (!(vacuum_tol > 0.0)) throw ConfigError("vacuum_tol must be > 0");
    if ((axis == Axis::AlphaMag || axis == Axis::SqueezeR) && start < 0.0) {
      throw ConfigError(to_string(axis) + " cannot be negative");
    }
    if (curves.empty()) throw ConfigError("a sweep needs at least one curve");
    for (const Curve& c : curves) {
      if (c.id.empty()) throw ConfigError("curve ids must be non-empty");
      PointParams p = c.apply(fixed);
      p.at(axis) = start;
      (void)p.squeeze();
      (void)CoherentLabel(p.alpha_mag, p.theta);
    }
  }

  /// start + (stop - start) k / (points - 1), with the last point exactly stop.
  double axis_value(std::size_t k) const {
    if (k + 1 == points) return stop;
    return start + (stop - start) * static_cast<double>(k) / static_cast<double>(points - 1);
  }
};

/// One CSV row: exactly the emitted columns.
struct SweepRow {
  std::string curve_id;
  std::string axis_name;
  double axis_value = 0.0;
  double eta1_re = 0.0;
  double eta1_im = 0.0;
  double eta2_re = 0.0;
  double delta_gamma = 0.0;
  double p_plus = 0.0;
  double p_minus = 0.0;
  double p_excite = 0.0;
  double n_mean = 0.0;
  std::string flags;

  bool has_flag(const std::string& flag) const {
    std::size_t pos = 0;
    while (pos <= flags.size()) {
      const std::size_t end = std::min(flags.find('|', pos), flags.size());
      if (flags.compare(pos, end - pos, flag) == 0 && end - pos == flag.size()) return true;
      pos = end + 1;
    }
    return false;
  }

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

using SweepTable = std::vector<SweepRow>;

inline constexpr const char* kFlagDegenerate = "degenerate";
inline constexpr const char* kFlagPerturbative = "perturbative";

inline SweepRow evaluate_row(const SweepSpec& spec, const Curve& curve, std::size_t k,
                             const InteractionIntegrals& integrals) {
  SweepRow row;
  row.curve_id = curve.id;
  row.axis_name = to_string(spec.axis);
  row.axis_value = spec.axis_value(k);
  PointParams p = curve.apply(spec.fixed);
  p.at(spec.axis) = row.axis_value;
  try {
    const PhaseResult r = evaluate_point(p.cat(), p.squeeze(), integrals);
    row.eta1_re = r.eta1.real();
    row.eta1_im = r.eta1.imag();
    row.eta2_re = r.eta2.real();
    row.delta_gamma = r.delta_gamma;
    row.p_plus = r.p_plus;
    row.p_minus = r.p_minus;
    row.p_excite = r.p_excite;
    row.n_mean = r.n_mean;
    if (r.perturbative) row.flags = kFlagPerturbative;
  } catch (const DegenerateCat&) {
    const double nan = std::nan("");
    row.eta1_re = row.eta1_im = row.eta2_re = row.delta_gamma = nan;
    row.p_plus = row.p_minus = row.p_excite = row.n_mean = nan;
    row.flags = kFlagDegenerate;
  } catch (const LogBranchDegenerate&) {
    const double nan = std::nan("");
    row.eta1_re = row.eta1_im = row.eta2_re = row.delta_gamma = nan;
    row.p_plus = row.p_minus = row.p_excite = row.n_mean = nan;
    row.flags = kFlagDegenerate;
  }
  return row;
}

/// Rows are curve-major, axis-minor regardless of `jobs`; jobs = 0 uses every core.
inline SweepTable run_sweep(const SweepSpec& spec, unsigned jobs = 1) {
  spec.validate();
  const InteractionIntegrals integrals = InteractionIntegrals::build(spec.cavity, spec.vacuum_tol);
  const std::size_t total = spec.curves.size() * spec.points;
  SweepTable table(total);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, total));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < total && !failed; i = next++) {
        table[i] = evaluate_row(spec, spec.curves[i / spec.points], i % spec.points, integrals);
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return table;
}

/// Rows whose values could not be computed.
inline std::size_t failed_rows(const SweepTable& table) {
  return static_cast<std::size_t>(std::count_if(table.begin(), table.end(), [](const SweepRow& r) {
    return r.has_flag(kFlagDegenerate) || !std::isfinite(r.delta_gamma);
  }));
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig3a", "fig3b", "fig4a", "fig4b", "fig5a",
                                                 "fig5b", "fig6",  "fig7a", "fig7b"};
  return names;
}

namespace detail {

inline std::string number_tag(double x) {
  std::string s = std::to_string(x);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

inline std::vector<Curve> special_class_curves() {
  return {class_curve(CatKind::Even), class_curve(CatKind::Odd), class_curve(CatKind::YurkeStolerPlus),
          class_curve(CatKind::YurkeStolerMinus)};
}

}  // namespace detail

/// theta = pi/2 throughout unless swept. Ranges: |alpha| in [0.05, 3], r in
/// [0, 1.5], angles in [0, 2pi] (theta in [0, pi]).
inline SweepSpec figure_preset(const std::string& name) {
  SweepSpec spec;
  spec.fixed.theta = kPi / 2.0;
  auto alpha_axis = [&](double r) {
    spec.axis = Axis::AlphaMag;
    spec.start = 0.05;
    spec.stop = 3.0;
    spec.points = 60;
    spec.fixed.squeeze_r = r;
    spec.fixed.squeeze_delta = 0.0;
    spec.curves = detail::special_class_curves();
  };
  auto r_axis = [&](double mag) {
    spec.axis = Axis::SqueezeR;
    spec.start = 0.0;
    spec.stop = 1.5;
    spec.points = 61;
    spec.fixed.alpha_mag = mag;
    spec.fixed.squeeze_delta = kPi;
    spec.curves = detail::special_class_curves();
  };
  auto delta_axis = [&](double mag) {
    spec.axis = Axis::SqueezeDelta;
    spec.start = 0.0;
    spec.stop = kTwoPi;
    spec.points = 121;
    spec.fixed.alpha_mag = mag;
    spec.fixed.squeeze_r = 1.0;
    spec.curves = detail::special_class_curves();
  };
  auto psi_axis = [&](double r) {
    spec.axis = Axis::Psi;
    spec.start = 0.0;
    spec.stop = kTwoPi;
    spec.points = 121;
    spec.fixed.squeeze_r = r;
    spec.fixed.squeeze_delta = 0.0;
    for (double mag : {0.1, 0.6, 1.0, 2.0}) {
      Curve c;
      c.id = "alpha=" + detail::number_tag(mag);
      c.alpha_mag = mag;
      spec.curves.push_back(c);
    }
  };

  if (name == "fig3a") {
    alpha_axis(0.0);
  } else if (name == "fig3b") {
    alpha_axis(1.0);
  } else if (name == "fig4a") {
    r_axis(0.5);
  } else if (name == "fig4b") {
    r_axis(2.0);
  } else if (name == "fig5a") {
    delta_axis(0.5);
  } else if (name == "fig5b") {
    delta_axis(2.0);
  } else if (name == "fig6") {
    spec.axis = Axis::Theta;
    spec.start = 0.0;
    spec.stop = kPi;
    spec.points = 121;
    spec.fixed.squeeze_delta = 0.0;
    for (const Curve& cls : detail::special_class_curves()) {
      for (double mag : {0.8, 1.2, 2.0, 3.0}) {
        for (double r : {0.0, 1.0}) {
          Curve c = cls;
          c.id = cls.id + ":alpha=" + detail::number_tag(mag) + ":r=" + detail::number_tag(r);
          c.alpha_mag = mag;
          c.squeeze_r = r;
          spec.curves.push_back(c);
        }
      }
    }
  } else if (name == "fig7a") {
    psi_axis(0.0);
  } else if (name == "fig7b") {
    psi_axis(1.0);
  } else {
    throw UnknownPreset("unknown figure preset '" + name + "'");
  }
  return spec;
}

}  // namespace catlab
