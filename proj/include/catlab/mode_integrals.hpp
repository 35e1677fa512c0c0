#pragma once

// Time integrals of the probe-field coupling for a probe crossing a 1D
// Dirichlet cavity at constant speed. Natural units throughout (c = 1):
// lengths and times share a unit, frequencies are angular.
//
//   I_{+-,j} = (k_j L)^{-1/2} int_0^T e^{i(w_j +- Omega)t} sin(k_j v t) dt
//
// and the time-ordered composites
//
//   int_0^T dt int_0^t dtau f_t(t) f_tau(tau)
//
// where each factor is one of those integrands, optionally conjugated.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/math/special_functions/digamma.hpp>

#include "catlab/core_states.hpp"
#include "catlab/errors.hpp"
#include "catlab/quadrature.hpp"

namespace catlab {

enum class Sideband { Plus, Minus };

inline double sideband_sign(Sideband s) { return s == Sideband::Plus ? 1.0 : -1.0; }

class CavityProbeConfig {
 public:
  CavityProbeConfig(double length, int populated_mode, double probe_speed, double probe_gap, double coupling)
      : length_(length), mode_(populated_mode), speed_(probe_speed), gap_(probe_gap), coupling_(coupling) {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(length_)) throw std::invalid_argument("cavity length must be > 0");
    if (mode_ < 1) throw std::invalid_argument("populated mode index must be >= 1");
    if (!positive(speed_)) throw std::invalid_argument("probe speed must be > 0");
    if (!positive(gap_)) throw std::invalid_argument("probe gap must be > 0");
    if (!(std::isfinite(coupling_) && coupling_ >= 0.0)) throw std::invalid_argument("coupling must be >= 0");
  }

  /// Gap on resonance with the populated mode and speed v = n / divisor < 1.
  static CavityProbeConfig invisible(int mode, long divisor, double length, double coupling_ratio) {
    if (divisor <= mode) throw std::invalid_argument("speed divisor must exceed the mode index (v < c)");
    const double gap = mode * kPi / length;
    return {length, mode, static_cast<double>(mode) / static_cast<double>(divisor), gap, coupling_ratio * gap};
  }

  double length() const { return length_; }
  int populated_mode() const { return mode_; }
  double probe_speed() const { return speed_; }
  double probe_gap() const { return gap_; }
  double coupling() const { return coupling_; }

  double transit_time() const { return length_ / speed_; }
  double mode_frequency(int j) const { return j * kPi / length_; }
  double wavenumber(int j) const { return j * kPi / length_; }
  /// w_j +- Omega.
  double detuning(int j, Sideband s) const { return mode_frequency(j) + sideband_sign(s) * gap_; }
  /// Angular rate of sin(k_j x(t)) along the trajectory x = v t.
  double spatial_rate(int j) const { return wavenumber(j) * speed_; }

 private:
  double length_;
  int mode_;
  double speed_;
  double gap_;
  double coupling_;
};

inline constexpr double kSpeedOfLight = 299792458.0;

/// SI inputs mapped to natural units (length unit 1 m, c = 1).
struct SiProbeParameters {
  double gap_hz = 1e11;
  double speed_mps = 1000.0;
  double coupling_ratio = 1e-4;  // lambda / Omega
  int mode = 2;
  double length_m = 0.0;         // <= 0: chosen for resonance with the populated mode
  bool tune_speed = true;        // round v to n/N for integer N
};

inline CavityProbeConfig from_si(const SiProbeParameters& si) {
  if (!(si.gap_hz > 0.0) || !(si.speed_mps > 0.0) || !(si.coupling_ratio > 0.0)) {
    throw std::invalid_argument("SI probe parameters must be positive");
  }
  const double gap = 2.0 * kPi * si.gap_hz / kSpeedOfLight;
  const double length = si.length_m > 0.0 ? si.length_m : si.mode * kPi / gap;
  double speed = si.speed_mps / kSpeedOfLight;
  if (si.tune_speed) {
    const double divisor = std::max(1.0, std::round(si.mode / speed));
    speed = si.mode / divisor;
  }
  return {length, si.mode, speed, gap, si.coupling_ratio * gap};
}

/// v = 1000 m/s, Omega = 1e11 Hz, lambda = 1e-4 Omega, n = 2, resonant and tuned.
inline CavityProbeConfig paper_si_config() { return from_si(SiProbeParameters{}); }

namespace detail {

/// (e^{ix} - 1) / (ix), accurate through x = 0.
inline cplx phase_window(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return {1.0 - x2 / 6.0, x / 2.0 - x * x2 / 24.0};
  }
  const double h = std::sin(0.5 * x);
  return {std::sin(x) / x, 2.0 * h * h / x};
}

/// int_0^T e^{ist} dt.
inline cplx window(double s, double duration) { return duration * phase_window(s * duration); }

/// int_0^1 u^n e^{ixu} du for n = 0..count-1.
inline void moment_windows(double x, int count, cplx* out) {
  const cplx ix(0.0, x);
  if (std::abs(x) <= 2.0) {
    for (int n = 0; n < count; ++n) {
      cplx sum = 0.0;
      cplx power = 1.0;  // (ix)^k / k!
      for (int k = 0; k < 60; ++k) {
        const cplx term = power / static_cast<double>(n + k + 1);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        power *= ix / static_cast<double>(k + 1);
      }
      out[n] = sum;
    }
    return;
  }
  const cplx e = std::polar(1.0, x);
  out[0] = phase_window(x);
  for (int n = 1; n < count; ++n) out[n] = (e - static_cast<double>(n) * out[n - 1]) / ix;
}

/// int_0^T dt e^{ipt} int_0^t dtau e^{iq tau}.
inline cplx ordered_window(double p, double q, double duration) {
  if (std::abs(q) * duration >= 0.05) {
    return (window(p + q, duration) - window(p, duration)) / cplx(0.0, q);
  }
  constexpr int kTerms = 13;
  cplx moments[kTerms + 1];
  moment_windows(p * duration, kTerms + 1, moments);
  cplx sum = 0.0;
  cplx coeff = duration * duration;  // (iq)^k T^{k+2} / (k+1)!
  for (int k = 0; k < kTerms; ++k) {
    sum += coeff * moments[k + 1];
    coeff *= cplx(0.0, q * duration) / static_cast<double>(k + 2);
  }
  return sum;
}

}  // namespace detail

/// The printed rational closed form, evaluated literally.
/// Throws ResonantDenominator when |(j pi v)^2 - L^2 (w_j +- Omega)^2| < 1e-12 (j pi v)^2.
inline cplx closed_form_direct(int j, Sideband s, const CavityProbeConfig& cfg) {
  const double p = j * kPi * cfg.probe_speed();
  const double q = cfg.length() * cfg.detuning(j, s);
  const double den = p * p - q * q;
  if (std::abs(den) < 1e-12 * p * p) {
    throw ResonantDenominator("I_" + std::string(s == Sideband::Plus ? "+" : "-") + "," + std::to_string(j) +
                              " sits on its pole");
  }
  const double parity = (j % 2 == 0) ? 1.0 : -1.0;
  const cplx bracket = 1.0 - parity * std::polar(1.0, cfg.transit_time() * cfg.detuning(j, s));
  return bracket * cfg.length() * cfg.probe_speed() * std::sqrt(j * kPi) / den;
}

/// Value of the closed form on its pole (L'Hopital), i sqrt(j pi) L / (2 j pi v) up to the pole's sign.
inline cplx resonant_limit(int j, Sideband s, const CavityProbeConfig& cfg) {
  const double p = j * kPi * cfg.probe_speed();
  const double q = cfg.length() * cfg.detuning(j, s);
  const double sign = q >= 0.0 ? 1.0 : -1.0;
  return sign * cplx(0.0, std::sqrt(j * kPi) * cfg.length() / (2.0 * p));
}

/// I_{+-,j} in closed form.
///
/// The denominator is factored around whichever pole is nearer, so the
/// evaluation stays accurate through it; on the pole itself the limiting
/// value is returned.
inline cplx integral_closed(int j, Sideband s, const CavityProbeConfig& cfg) {
  if (j < 1) throw std::invalid_argument("mode index must be >= 1");
  const double p = j * kPi * cfg.probe_speed();
  const double q = cfg.length() * cfg.detuning(j, s);
  if (std::abs(p * p - q * q) < 1e-12 * p * p) return resonant_limit(j, s, cfg);
  const double root = std::sqrt(j * kPi) * cfg.length();
  // (-1)^j e^{i w T} = e^{iy} with y the phase offset from the nearer pole.
  if (std::abs(q - p) <= std::abs(q + p)) {
    const double d = q - p;
    const double y = d / cfg.probe_speed();
    return cplx(0.0, 1.0) * root * detail::phase_window(y) / (p + q);
  }
  const double d = q + p;
  const double y = d / cfg.probe_speed();
  return -cplx(0.0, 1.0) * root * detail::phase_window(y) / (p - q);
}

/// I_{+-,j} by composite Gauss-Legendre, doubling panels until the value
/// moves by less than 1e-12 of max(|I|, T / sqrt(j pi)).
inline cplx integral_quadrature(int j, Sideband s, const CavityProbeConfig& cfg) {
  if (j < 1) throw std::invalid_argument("mode index must be >= 1");
  const double w = cfg.detuning(j, s);
  const double b = cfg.spatial_rate(j);
  const double duration = cfg.transit_time();
  const double prefactor = 1.0 / std::sqrt(j * kPi);
  auto integrand = [&](double t) { return std::polar(std::sin(b * t), w * t); };

  constexpr std::size_t kOrder = 16;
  constexpr std::size_t kMaxPanels = std::size_t{1} << 22;
  auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil((std::abs(w) + b) * duration / kPi)));
  panels = std::min(panels, kMaxPanels);
  cplx value = integrate_panels(integrand, 0.0, duration, panels, kOrder);
  const double scale = duration;
  while (panels < kMaxPanels) {
    panels *= 2;
    const cplx refined = integrate_panels(integrand, 0.0, duration, panels, kOrder);
    const double change = std::abs(refined - value);
    value = refined;
    if (change < 1e-12 * std::max(std::abs(value), scale)) break;
  }
  return prefactor * value;
}

/// One factor of a composite: the I_{+-,j} integrand, optionally conjugated.
struct Factor {
  Sideband sideband = Sideband::Plus;
  bool conjugate = false;

  friend auto operator<=>(const Factor&, const Factor&) = default;
};

/// I*_{+,j} o I_{+,l}: the kind that enters the survival amplitude.
inline constexpr Factor kPlusConj{Sideband::Plus, true};
inline constexpr Factor kPlus{Sideband::Plus, false};

/// Time-ordered composite in closed form, from the exponential expansion of
/// both sines: four ordered windows int_0^T e^{ipt} int_0^t e^{iq tau}.
inline cplx composite_closed(int j, int l, Factor outer, Factor inner, const CavityProbeConfig& cfg) {
  if (j < 1 || l < 1) throw std::invalid_argument("mode indices must be >= 1");
  const double duration = cfg.transit_time();
  const double wt = (outer.conjugate ? -1.0 : 1.0) * cfg.detuning(j, outer.sideband);
  const double wtau = (inner.conjugate ? -1.0 : 1.0) * cfg.detuning(l, inner.sideband);
  const double bt = cfg.spatial_rate(j);
  const double btau = cfg.spatial_rate(l);
  cplx sum = 0.0;
  for (int a : {1, -1}) {
    for (int c : {1, -1}) {
      sum += static_cast<double>(a * c) * detail::ordered_window(wt + a * bt, wtau + c * btau, duration);
    }
  }
  return -sum / (4.0 * kPi * std::sqrt(static_cast<double>(j) * l));
}

/// Time-ordered composite by tensor-product Gauss-Legendre on the triangle
/// 0 <= tau <= t <= T through tau = t u, u in [0, 1]. Panel counts double
/// until the value moves by less than 1e-11 of max(|value|, T^2 / (2 pi sqrt(j l))).
inline cplx composite_integral(int j, int l, Factor outer, Factor inner, const CavityProbeConfig& cfg) {
  if (j < 1 || l < 1) throw std::invalid_argument("mode indices must be >= 1");
  const double duration = cfg.transit_time();
  const double wt = (outer.conjugate ? -1.0 : 1.0) * cfg.detuning(j, outer.sideband);
  const double wtau = (inner.conjugate ? -1.0 : 1.0) * cfg.detuning(l, inner.sideband);
  const double bt = cfg.spatial_rate(j);
  const double btau = cfg.spatial_rate(l);

  auto evaluate = [&](std::size_t t_panels, std::size_t u_panels) {
    auto inner_integral = [&](double t) {
      auto f = [&](double u) {
        const double tau = t * u;
        return std::polar(std::sin(btau * tau), wtau * tau);
      };
      return t * integrate_panels(f, 0.0, 1.0, u_panels, 16);
    };
    auto outer_integrand = [&](double t) { return std::polar(std::sin(bt * t), wt * t) * inner_integral(t); };
    return integrate_panels(outer_integrand, 0.0, duration, t_panels, 16);
  };

  constexpr std::size_t kMaxPanels = 4096;
  auto t_panels = static_cast<std::size_t>(std::max(1.0, std::ceil((std::abs(wt) + bt) * duration / kPi)));
  auto u_panels = static_cast<std::size_t>(std::max(1.0, std::ceil((std::abs(wtau) + btau) * duration / kPi)));
  t_panels = std::min(t_panels, kMaxPanels);
  u_panels = std::min(u_panels, kMaxPanels);
  cplx value = evaluate(t_panels, u_panels);
  const double scale = duration * duration / (2.0 * kPi * std::sqrt(static_cast<double>(j) * l));
  while (t_panels < kMaxPanels && u_panels < kMaxPanels) {
    t_panels *= 2;
    u_panels *= 2;
    const cplx refined = evaluate(t_panels, u_panels);
    const double change = std::abs(refined - value);
    value = refined;
    if (change < 1e-11 * std::max(std::abs(value) * kPi * std::sqrt(static_cast<double>(j) * l), scale)) break;
  }
  return value / (kPi * std::sqrt(static_cast<double>(j) * l));
}

/// sum_m I*_{+,m} o I_{+,m} over all cavity modes.
struct VacuumSum {
  cplx value;
  /// Modes summed exactly; the rest is the analytic leading-order tail.
  long modes = 0;
  /// Bound on |value - exact sum|.
  double tail_bound = 0.0;
  cplx tail_estimate;
};

namespace detail {

struct VacuumTailModel {
  double speed;
  double duration;
  double length;
  double gap;
  long min_modes;    // first M for which the m^-3 remainder bound holds
  double remainder;  // C with |term_m - lead_m| <= C / m^3 for m > min_modes
};

inline VacuumTailModel vacuum_tail_model(const CavityProbeConfig& cfg) {
  const double v = cfg.probe_speed();
  const double length = cfg.length();
  if (std::abs(1.0 - v) < 1e-6) {
    throw std::domain_error("vacuum mode sum diverges for a probe moving at the speed of light");
  }
  VacuumTailModel model{v, cfg.transit_time(), length, cfg.probe_gap(), 16, 0.0};
  const double k1 = (1.0 + v) * kPi / length;
  double k2 = 0.0;
  if (v < 1.0) {
    k2 = (1.0 - v) * kPi / length;
  } else {
    k2 = (v - 1.0) * kPi / (2.0 * length);
    const double m1 = std::ceil(2.0 * cfg.probe_gap() * length / ((v - 1.0) * kPi));
    model.min_modes = std::max<long>(model.min_modes, static_cast<long>(m1) + 1);
  }
  model.remainder = (v / length) * (1.0 / k1 + 1.0 / k2) / (k1 * k2);
  return model;
}

/// Leading large-m behaviour of I*_{+,m} o I_{+,m}: -(i/2) T w / ((w^2 - b^2) m pi).
inline cplx vacuum_lead_term(const CavityProbeConfig& cfg, long m) {
  const double w = cfg.detuning(static_cast<int>(m), Sideband::Plus);
  const double b = cfg.spatial_rate(static_cast<int>(m));
  return cplx(0.0, -0.5 * cfg.transit_time() * w / ((w - b) * (w + b) * m * kPi));
}

/// sum_{m > M} of the lead term via digamma.
inline cplx vacuum_lead_tail(const VacuumTailModel& model, long modes) {
  const double v = model.speed;
  const double a0 = model.gap * model.length / kPi;
  const double ap = a0 / (1.0 + v);
  const double am = a0 / (1.0 - v);
  const double k = -0.5 * model.duration * model.length / (kPi * kPi * (1.0 - v * v));
  // (m + a0) / (m (m + ap)(m + am)) = A1/m + A2/(m + ap) + A3/(m + am), A1 + A2 + A3 = 0.
  const double a1 = a0 / (ap * am);
  const double a2 = (a0 - ap) / (-ap * (am - ap));
  const double x = static_cast<double>(modes) + 1.0;
  using boost::math::digamma;
  const double psi_x = digamma(x);
  const double psi_m = digamma(x + am);
  const double tail = -(a1 * psi_x + a2 * (digamma(x + ap) - psi_m) - a1 * psi_m);
  return cplx(0.0, k * tail);
}

}  // namespace detail

/// Exact terms for m = 1..M plus the analytic lead tail beyond M.
inline VacuumSum vacuum_partial_sum(const CavityProbeConfig& cfg, long modes) {
  const detail::VacuumTailModel model = detail::vacuum_tail_model(cfg);
  if (modes < model.min_modes) modes = model.min_modes;
  cplx partial = 0.0;
  for (long m = 1; m <= modes; ++m) partial += composite_closed(static_cast<int>(m), static_cast<int>(m), kPlusConj, kPlus, cfg);
  VacuumSum out;
  out.tail_estimate = detail::vacuum_lead_tail(model, modes);
  out.value = partial + out.tail_estimate;
  out.modes = modes;
  out.tail_bound = model.remainder / (2.0 * static_cast<double>(modes) * static_cast<double>(modes));
  return out;
}

/// Smallest M whose remainder bound is below tol (at least 16).
inline long vacuum_modes_for(const CavityProbeConfig& cfg, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("vacuum sum tolerance must be > 0");
  const detail::VacuumTailModel model = detail::vacuum_tail_model(cfg);
  const double needed = std::ceil(std::sqrt(model.remainder / (2.0 * tol)));
  constexpr double kMaxModes = 5e7;
  if (needed > kMaxModes) throw std::domain_error("vacuum sum tolerance needs more than 5e7 modes");
  return std::max(model.min_modes, static_cast<long>(needed));
}

inline VacuumSum vacuum_mode_sum(const CavityProbeConfig& cfg, double tol) {
  return vacuum_partial_sum(cfg, vacuum_modes_for(cfg, tol));
}

/// sum_m |I_{+,m}|^2, the vacuum part of the excitation probability.
struct ExcitationSum {
  double value = 0.0;
  long modes = 0;
  double tail_bound = 0.0;
};

/// Sums |I_{+,m}|^2 until the analytic m^-3 tail bound is below rel_tol of the partial sum.
inline ExcitationSum excitation_mode_sum(const CavityProbeConfig& cfg, double rel_tol = 1e-9) {
  const double v = cfg.probe_speed();
  const double length = cfg.length();
  if (std::abs(1.0 - v) < 1e-6) throw std::domain_error("excitation sum diverges at v = c");
  double kappa = 1.0 - v;
  long min_modes = 16;
  if (v > 1.0) {
    kappa = 0.5 * (v - 1.0);
    min_modes = std::max<long>(min_modes, static_cast<long>(std::ceil(2.0 * cfg.probe_gap() * length / ((v - 1.0) * kPi))) + 1);
  }
  const double coefficient = 2.0 * length * length * v * v / (kPi * kPi * kPi * (1.0 + v) * (1.0 + v) * kappa * kappa);

  ExcitationSum out;
  long m = 0;
  long target = min_modes;
  constexpr long kMaxModes = 50'000'000;
  while (true) {
    for (; m < target; ++m) out.value += std::norm(integral_closed(static_cast<int>(m + 1), Sideband::Plus, cfg));
    out.modes = target;
    out.tail_bound = coefficient / (static_cast<double>(target) * static_cast<double>(target));
    if (out.tail_bound <= rel_tol * out.value || target >= kMaxModes) break;
    const double needed = std::sqrt(coefficient / (rel_tol * std::max(out.value, 1e-300)));
    target = static_cast<long>(std::min<double>(kMaxModes, std::max<double>(2.0 * target, std::ceil(needed))));
  }
  return out;
}

struct InvisibilityReport {
  bool even_mode = false;
  bool resonant = false;
  bool speed_tuned = false;
  long speed_divisor = 0;  // nearest integer N to n / v
  double resonance_residual = 0.0;  // |Omega - w_n| / w_n
  double speed_residual = 0.0;      // |n/v - N| / N
  double abs_i_minus = 0.0;
  double abs_i_plus = 0.0;

  bool invisible() const { return even_mode && resonant && speed_tuned; }
};

inline InvisibilityReport invisibility_report(const CavityProbeConfig& cfg, double rel_tol = 1e-9) {
  InvisibilityReport report;
  const int n = cfg.populated_mode();
  report.even_mode = n % 2 == 0;
  const double wn = cfg.mode_frequency(n);
  report.resonance_residual = std::abs(cfg.probe_gap() - wn) / wn;
  report.resonant = report.resonance_residual <= rel_tol;
  const double ratio = n / cfg.probe_speed();
  report.speed_divisor = static_cast<long>(std::llround(ratio));
  report.speed_residual =
      report.speed_divisor > 0 ? std::abs(ratio - static_cast<double>(report.speed_divisor)) / report.speed_divisor : 1.0;
  report.speed_tuned = report.speed_divisor >= 1 && report.speed_residual <= rel_tol;
  report.abs_i_minus = std::abs(integral_closed(n, Sideband::Minus, cfg));
  report.abs_i_plus = std::abs(integral_closed(n, Sideband::Plus, cfg));
  return report;
}

/// Per-configuration cache of everything the phase and excitation
/// formulas need. Built once, read-only afterwards.
class InteractionIntegrals {
 public:
  struct CompositeKey {
    int j;
    int l;
    Factor outer;
    Factor inner;
    friend auto operator<=>(const CompositeKey&, const CompositeKey&) = default;
  };

  static InteractionIntegrals build(const CavityProbeConfig& cfg, double vacuum_tol = 1e-12, int listed_modes = 0) {
    InteractionIntegrals out(cfg);
    const int n = cfg.populated_mode();
    const int top = std::max(n, listed_modes);
    for (int j = 1; j <= top; ++j) {
      out.i_plus_[j] = integral_closed(j, Sideband::Plus, cfg);
      out.i_minus_[j] = integral_closed(j, Sideband::Minus, cfg);
    }
    const Factor minus{Sideband::Minus, false};
    const Factor minus_conj{Sideband::Minus, true};
    for (const auto& [outer, inner] : {std::pair{kPlusConj, kPlus}, std::pair{minus, kPlus},
                                       std::pair{minus, minus_conj}, std::pair{kPlusConj, minus_conj}}) {
      out.composites_[{n, n, outer, inner}] = composite_closed(n, n, outer, inner, cfg);
    }
    out.vacuum_ = vacuum_mode_sum(cfg, vacuum_tol);
    out.excitation_ = excitation_mode_sum(cfg);
    return out;
  }

  const CavityProbeConfig& config() const { return cfg_; }
  cplx i_plus(int j) const { return lookup(i_plus_, j, Sideband::Plus); }
  cplx i_minus(int j) const { return lookup(i_minus_, j, Sideband::Minus); }

  cplx composite(int j, int l, Factor outer, Factor inner) const {
    auto it = composites_.find({j, l, outer, inner});
    if (it != composites_.end()) return it->second;
    return composite_closed(j, l, outer, inner, cfg_);
  }

  /// I*_{+,n} o I_{+,n} for the populated mode n.
  cplx populated_composite() const {
    const int n = cfg_.populated_mode();
    return composite(n, n, kPlusConj, kPlus);
  }

  const VacuumSum& vacuum_sum() const { return vacuum_; }
  const ExcitationSum& excitation_sum() const { return excitation_; }
  const std::map<int, cplx>& i_plus_table() const { return i_plus_; }
  const std::map<int, cplx>& i_minus_table() const { return i_minus_; }

 private:
  explicit InteractionIntegrals(const CavityProbeConfig& cfg) : cfg_(cfg) {}

  cplx lookup(const std::map<int, cplx>& table, int j, Sideband s) const {
    auto it = table.find(j);
    return it != table.end() ? it->second : integral_closed(j, s, cfg_);
  }

  CavityProbeConfig cfg_;
  std::map<int, cplx> i_plus_;
  std::map<int, cplx> i_minus_;
  std::map<CompositeKey, cplx> composites_;
  VacuumSum vacuum_;
  ExcitationSum excitation_;
};

}  // namespace catlab
