#pragma once

// Cat-state parameterization and the closed-form state-level quantities:
// coherent overlaps, the superposition normalization, photon-number moments
// of the (squeezed) cat and the even/odd/Yurke-Stoler classification.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "catlab/errors.hpp"

namespace catlab {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps any finite angle onto [0, 2pi).
inline double canonical_phase(double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("phase must be finite");
  double wrapped = std::fmod(angle, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return wrapped;
}

/// A coherent amplitude |alpha| e^{i theta}; the phase is kept in [0, 2pi).
class CoherentLabel {
 public:
  CoherentLabel() = default;
  CoherentLabel(double magnitude, double phase) : magnitude_(magnitude), phase_(canonical_phase(phase)) {
    if (!std::isfinite(magnitude) || magnitude < 0.0) {
      throw std::invalid_argument("coherent magnitude must be finite and >= 0");
    }
  }

  static CoherentLabel from_complex(cplx z) { return {std::abs(z), std::arg(z)}; }

  double magnitude() const { return magnitude_; }
  double phase() const { return phase_; }
  cplx value() const { return std::polar(magnitude_, phase_); }

 private:
  double magnitude_ = 0.0;
  double phase_ = 0.0;
};

/// <b|a> = exp(-(|a|^2 + |b|^2 - 2 a conj(b)) / 2).
inline cplx coherent_overlap(const CoherentLabel& a, const CoherentLabel& b) {
  const cplx av = a.value();
  const cplx bv = b.value();
  const double ma = a.magnitude();
  const double mb = b.magnitude();
  return std::exp(-0.5 * (ma * ma + mb * mb - 2.0 * av * std::conj(bv)));
}

/// Complex squeeze parameter zeta = r e^{i delta}.
class SqueezeParams {
 public:
  SqueezeParams() = default;
  SqueezeParams(double amplitude, double phase) : amplitude_(amplitude), phase_(canonical_phase(phase)) {
    if (!std::isfinite(amplitude) || amplitude < 0.0) {
      throw std::invalid_argument("squeeze amplitude must be finite and >= 0");
    }
  }

  double amplitude() const { return amplitude_; }
  double phase() const { return phase_; }
  cplx zeta() const { return std::polar(amplitude_, phase_); }
  double cosh_r() const { return std::cosh(amplitude_); }
  double sinh_r() const { return std::sinh(amplitude_); }

 private:
  double amplitude_ = 0.0;
  double phase_ = 0.0;
};

namespace detail {

inline double normalization_radicand(const CoherentLabel& alpha, const CoherentLabel& beta, double a, double b,
                                     double psi) {
  const cplx rotated = coherent_overlap(alpha, beta) * std::polar(1.0, -psi);
  return 1.0 + 2.0 * a * b * rotated.real();
}

}  // namespace detail

/// The superposition (A|alpha> + e^{i psi} B|beta>) / N_psi.
///
/// A and B may be passed unnormalized; they are rescaled so that
/// A^2 + B^2 = 1 and the applied factor is kept in weight_rescale().
/// Construction throws DegenerateCat when the state vanishes.
class CatParams {
 public:
  static constexpr double kDegenerateRadicand = 1e-14;

  CatParams(CoherentLabel alpha, CoherentLabel beta, double weight_a, double weight_b, double psi)
      : alpha_(alpha), beta_(beta), psi_(canonical_phase(psi)) {
    if (!std::isfinite(weight_a) || !std::isfinite(weight_b)) {
      throw std::invalid_argument("cat weights must be finite");
    }
    const double norm = std::hypot(weight_a, weight_b);
    if (norm == 0.0) throw std::invalid_argument("cat weights A and B cannot both vanish");
    rescale_ = 1.0 / norm;
    a_ = weight_a * rescale_;
    b_ = weight_b * rescale_;
    radicand_ = detail::normalization_radicand(alpha_, beta_, a_, b_, psi_);
    if (radicand_ <= kDegenerateRadicand) {
      throw DegenerateCat("cat state vanishes: N_psi^2 = " + std::to_string(radicand_));
    }
  }

  /// A = B = 1/sqrt(2), alpha = |alpha| e^{i theta}, beta = conj(alpha).
  static CatParams symmetric(double magnitude, double theta, double psi) {
    const CoherentLabel alpha(magnitude, theta);
    const CoherentLabel beta(magnitude, -theta);
    return {alpha, beta, 1.0, 1.0, psi};
  }

  /// A = B = 1/sqrt(2), beta = -alpha.
  static CatParams antipodal(double magnitude, double theta, double psi) {
    const CoherentLabel alpha(magnitude, theta);
    const CoherentLabel beta(magnitude, theta + kPi);
    return {alpha, beta, 1.0, 1.0, psi};
  }

  /// A plain coherent state (A = 1, B = 0).
  static CatParams coherent(CoherentLabel alpha) { return {alpha, CoherentLabel{}, 1.0, 0.0, 0.0}; }

  const CoherentLabel& alpha() const { return alpha_; }
  const CoherentLabel& beta() const { return beta_; }
  double weight_a() const { return a_; }
  double weight_b() const { return b_; }
  double psi() const { return psi_; }
  /// Factor applied to the user's (A, B) to normalize them.
  double weight_rescale() const { return rescale_; }
  double normalization() const { return std::sqrt(radicand_); }
  double normalization_sq() const { return radicand_; }

 private:
  CoherentLabel alpha_;
  CoherentLabel beta_;
  double a_ = 1.0;
  double b_ = 0.0;
  double psi_ = 0.0;
  double rescale_ = 1.0;
  double radicand_ = 1.0;
};

/// N_psi = (1 + 2AB Re[<beta|alpha> e^{-i psi}])^{1/2}.
inline double normalization(const CatParams& cat) {
  const double radicand = detail::normalization_radicand(cat.alpha(), cat.beta(), cat.weight_a(),
                                                         cat.weight_b(), cat.psi());
  if (radicand <= CatParams::kDegenerateRadicand) throw DegenerateCat("cat state vanishes");
  return std::sqrt(radicand);
}

enum class CatKind { Even, Odd, YurkeStolerPlus, YurkeStolerMinus, General };

struct CatClass {
  CatKind kind = CatKind::General;
  double psi = 0.0;

  bool special() const { return kind != CatKind::General; }
};

inline std::string to_string(CatKind kind) {
  switch (kind) {
    case CatKind::Even:
      return "even";
    case CatKind::Odd:
      return "odd";
    case CatKind::YurkeStolerPlus:
      return "ys+";
    case CatKind::YurkeStolerMinus:
      return "ys-";
    case CatKind::General:
      break;
  }
  return "general";
}

/// The superposition phase that defines a special class.
inline double class_phase(CatKind kind) {
  switch (kind) {
    case CatKind::Even:
      return 0.0;
    case CatKind::Odd:
      return kPi;
    case CatKind::YurkeStolerPlus:
      return kPi / 2.0;
    case CatKind::YurkeStolerMinus:
      return 3.0 * kPi / 2.0;
    case CatKind::General:
      break;
  }
  throw InvalidClass("general cats have no fixed superposition phase");
}

inline CatClass classify(double psi) {
  constexpr double tol = 1e-12;
  const double p = canonical_phase(psi);
  auto near = [&](double target) { return std::abs(p - target) <= tol; };
  if (near(0.0) || near(kTwoPi)) return {CatKind::Even, 0.0};
  if (near(kPi)) return {CatKind::Odd, kPi};
  if (near(kPi / 2.0)) return {CatKind::YurkeStolerPlus, kPi / 2.0};
  if (near(3.0 * kPi / 2.0)) return {CatKind::YurkeStolerMinus, 3.0 * kPi / 2.0};
  return {CatKind::General, p};
}

/// Mean photon number of the unsqueezed even/odd/Yurke-Stoler cat built
/// from |alpha> and |-alpha>. With x = |alpha|^2 these are x tanh x,
/// x coth x (-> 1 as x -> 0) and x.
inline double mean_photon_special(CatKind kind, double magnitude) {
  if (!std::isfinite(magnitude) || magnitude < 0.0) throw std::invalid_argument("magnitude must be >= 0");
  const double x = magnitude * magnitude;
  switch (kind) {
    case CatKind::Even:
      return x * std::tanh(x);
    case CatKind::Odd:
      return x == 0.0 ? 1.0 : x / std::tanh(x);
    case CatKind::YurkeStolerPlus:
    case CatKind::YurkeStolerMinus:
      return x;
    case CatKind::General:
      break;
  }
  throw InvalidClass("mean_photon_special needs a special class");
}

/// N_psi^2 <a^dag a> in the squeezed cat S(zeta)(A|alpha> + e^{i psi}B|beta>)/N_psi,
/// written term by term as the populated-mode factor of the excitation probability.
inline double photon_number_bracket(const CatParams& cat, const SqueezeParams& sq) {
  const double c = sq.cosh_r();
  const double s = sq.sinh_r();
  const double a = cat.weight_a();
  const double b = cat.weight_b();
  const cplx alpha = cat.alpha().value();
  const cplx beta = cat.beta().value();
  const double alpha_sq_mag = cat.alpha().magnitude() * cat.alpha().magnitude();
  const double beta_sq_mag = cat.beta().magnitude() * cat.beta().magnitude();
  const cplx overlap_ba = coherent_overlap(cat.alpha(), cat.beta());  // <beta|alpha>
  const cplx overlap_ab = std::conj(overlap_ba);
  const cplx rot_psi = std::polar(1.0, -cat.psi());
  const cplx rot_delta = std::polar(1.0, -sq.phase());

  const double c2s2 = c * c + s * s;
  const double cs = c * s;

  double bracket = s * s + c2s2 * (a * a * alpha_sq_mag + b * b * beta_sq_mag) -
                   2.0 * cs * (a * a * (rot_delta * alpha * alpha).real() + b * b * (rot_delta * beta * beta).real());
  const double interference =
      s * s * (rot_psi * overlap_ba).real() + c2s2 * (rot_psi * std::conj(beta) * alpha * overlap_ba).real() -
      (rot_delta * std::conj(rot_psi) * beta * beta * overlap_ab).real() * cs -
      (rot_delta * rot_psi * alpha * alpha * overlap_ba).real() * cs;
  bracket += 2.0 * a * b * interference;
  return bracket;
}

/// <a^dag a> in the normalized squeezed cat.
inline double mean_photon_general(const CatParams& cat, const SqueezeParams& sq) {
  return photon_number_bracket(cat, sq) / cat.normalization_sq();
}

}  // namespace catlab
