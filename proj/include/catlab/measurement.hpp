#pragma once

// Probe observables: excitation probability, path phases eta1/eta2, the
// interferometric phase difference and the detection probabilities.
//
// The populated-mode factor is <a a^dag> in the squeezed cat. The unit
// vacuum part of that factor is already carried by the all-modes sum, so
// only (bracket - 1) multiplies the populated-mode integrals.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <tuple>
#include <utility>

#include "catlab/core_states.hpp"
#include "catlab/errors.hpp"
#include "catlab/fock_oracle.hpp"
#include "catlab/mode_integrals.hpp"

namespace catlab {

enum class BracketSource { Analytic, Oracle };

/// Above this, lambda^2 |bracket| |I o I| makes the second-order truncation suspect.
inline constexpr double kPerturbativeLimit = 1e-2;

/// <a a^dag> in the normalized squeezed cat.
inline double excitation_bracket(const CatParams& cat, const SqueezeParams& sq,
                                 BracketSource source = BracketSource::Analytic) {
  if (source == BracketSource::Oracle) return excitation_bracket_oracle(cat, sq);
  return 1.0 + mean_photon_general(cat, sq);
}

/// lambda^2 { sum_m |I_{+,m}|^2 + |I_{+,n}|^2 (bracket - 1) }.
inline double transition_probability(double bracket, const CavityProbeConfig& cfg, const ExcitationSum& vacuum) {
  const double lambda_sq = cfg.coupling() * cfg.coupling();
  const double populated = std::norm(integral_closed(cfg.populated_mode(), Sideband::Plus, cfg));
  return std::max(0.0, lambda_sq * (vacuum.value + populated * (bracket - 1.0)));
}

inline double transition_probability(const CatParams& cat, const SqueezeParams& sq, const CavityProbeConfig& cfg,
                                      BracketSource source = BracketSource::Analytic) {
  return transition_probability(excitation_bracket(cat, sq, source), cfg, excitation_mode_sum(cfg));
}

inline double transition_probability(const CatParams& cat, const SqueezeParams& sq,
                                     const InteractionIntegrals& integrals,
                                     BracketSource source = BracketSource::Analytic) {
  return transition_probability(excitation_bracket(cat, sq, source), integrals.config(), integrals.excitation_sum());
}

namespace detail {

inline cplx survival_log(cplx argument) {
  if (std::abs(argument) < 1e-300) throw LogBranchDegenerate("survival amplitude vanishes; log undefined");
  return cplx(0.0, -1.0) * std::log(argument);
}

}  // namespace detail

/// eta1 from a populated-mode bracket <a a^dag>.
inline cplx eta1_from_bracket(double bracket, const InteractionIntegrals& integrals) {
  const double lambda_sq = integrals.config().coupling() * integrals.config().coupling();
  const cplx argument =
      1.0 - lambda_sq * integrals.vacuum_sum().value - lambda_sq * integrals.populated_composite() * (bracket - 1.0);
  return detail::survival_log(argument);
}

inline cplx eta1_general(const CatParams& cat, const SqueezeParams& sq, const InteractionIntegrals& integrals,
                         BracketSource source = BracketSource::Analytic) {
  return eta1_from_bracket(excitation_bracket(cat, sq, source), integrals);
}

/// <a a^dag> for A = B = 1/sqrt(2), alpha = |alpha| e^{i theta}, beta = conj(alpha).
///
/// With x = |alpha|^2, D = e^{-2x sin^2 theta} and phi = x sin 2theta the
/// normalization is 1 + D cos(psi - phi) and every interference term carries
/// D cos(psi - 2theta - phi) or D cos(psi - phi).
inline double symmetric_bracket(double psi, const SqueezeParams& sq, double magnitude, double theta) {
  if (!std::isfinite(magnitude) || magnitude < 0.0) throw std::invalid_argument("magnitude must be >= 0");
  const double x = magnitude * magnitude;
  const double s_theta = std::sin(theta);
  const double damping = std::exp(-2.0 * x * s_theta * s_theta);
  const double drift = x * std::sin(2.0 * theta);
  const double norm_sq = 1.0 + damping * std::cos(psi - drift);
  if (norm_sq <= CatParams::kDegenerateRadicand) throw DegenerateCat("symmetric cat vanishes");
  const double c = sq.cosh_r();
  const double s = sq.sinh_r();
  const double shifted = damping * std::cos(psi - 2.0 * theta - drift);
  const double photon = s * s * norm_sq + (c * c + s * s) * x * (1.0 + shifted) -
                        2.0 * c * s * x * std::cos(sq.phase()) * (std::cos(2.0 * theta) + shifted);
  return 1.0 + photon / norm_sq;
}

inline cplx eta1_symmetric(double psi, const SqueezeParams& sq, double magnitude, double theta,
                           const InteractionIntegrals& integrals) {
  return eta1_from_bracket(symmetric_bracket(psi, sq, magnitude, theta), integrals);
}

/// <a a^dag> for the special classes at theta = pi/2:
/// 1 + S^2 + (C^2 + S^2) nbar + 2CS |alpha|^2 cos(delta).
inline double special_bracket(const CatClass& cls, double magnitude, const SqueezeParams& sq) {
  if (!cls.special()) throw InvalidClass("special_bracket needs Even, Odd or Yurke-Stoler");
  const double c = sq.cosh_r();
  const double s = sq.sinh_r();
  const double nbar = mean_photon_special(cls.kind, magnitude);
  return 1.0 + s * s + (c * c + s * s) * nbar + 2.0 * c * s * magnitude * magnitude * std::cos(sq.phase());
}

inline cplx eta1_special(const CatClass& cls, double magnitude, const SqueezeParams& sq,
                         const InteractionIntegrals& integrals) {
  return eta1_from_bracket(special_bracket(cls, magnitude, sq), integrals);
}

inline cplx eta2_vacuum(const InteractionIntegrals& integrals) {
  const double lambda_sq = integrals.config().coupling() * integrals.config().coupling();
  return detail::survival_log(1.0 - lambda_sq * integrals.vacuum_sum().value);
}

/// Maps onto (-pi, pi].
inline double wrap_phase(double angle) {
  double wrapped = std::remainder(angle, kTwoPi);
  if (wrapped <= -kPi) wrapped += kTwoPi;
  return wrapped;
}

inline double delta_gamma(cplx eta1, cplx eta2) { return wrap_phase(eta1.real() - eta2.real()); }

/// (P+, P-) = ((1 + cos dg)/2, (1 - cos dg)/2); P+ is formed as 1 - P- so the pair sums to one.
inline std::pair<double, double> detection_probabilities(double dg) {
  const double p_minus = 0.5 * (1.0 - std::cos(dg));
  return {1.0 - p_minus, p_minus};
}

struct PhaseResult {
  cplx eta1;
  cplx eta2;
  double delta_gamma = 0.0;
  double p_plus = 1.0;
  double p_minus = 0.0;
  double p_excite = 0.0;
  double n_mean = 0.0;
  double bracket = 1.0;
  bool perturbative = false;

  double gamma1() const { return eta1.real(); }
  double gamma2() const { return eta2.real(); }
};

inline PhaseResult phase_result_from_bracket(double bracket, double n_mean, const InteractionIntegrals& integrals) {
  PhaseResult out;
  out.bracket = bracket;
  out.n_mean = n_mean;
  out.eta1 = eta1_from_bracket(bracket, integrals);
  out.eta2 = eta2_vacuum(integrals);
  out.delta_gamma = delta_gamma(out.eta1, out.eta2);
  std::tie(out.p_plus, out.p_minus) = detection_probabilities(out.delta_gamma);
  out.p_excite = transition_probability(bracket, integrals.config(), integrals.excitation_sum());
  const double lambda_sq = integrals.config().coupling() * integrals.config().coupling();
  out.perturbative = lambda_sq * std::abs(bracket) * std::abs(integrals.populated_composite()) > kPerturbativeLimit;
  return out;
}

inline PhaseResult evaluate_point(const CatParams& cat, const SqueezeParams& sq, const InteractionIntegrals& integrals,
                                  BracketSource source = BracketSource::Analytic) {
  const double bracket = excitation_bracket(cat, sq, source);
  return phase_result_from_bracket(bracket, bracket - 1.0, integrals);
}

}  // namespace catlab
