#pragma once

// Brute-force truncated Fock-space engine. Everything here is computed
// from matrices and amplitude vectors in the number basis and serves as
// the independent check on the closed-form brackets.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <limits>
#include <string>
#include <vector>

#include "catlab/core_states.hpp"
#include "catlab/errors.hpp"

namespace catlab {

class FockVector {
 public:
  FockVector() = default;
  explicit FockVector(Eigen::VectorXcd amps, double norm_loss = 0.0) : amps_(std::move(amps)), norm_loss_(norm_loss) {}

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Eigen::VectorXcd& amps() const { return amps_; }
  cplx operator[](std::size_t n) const { return amps_(static_cast<Eigen::Index>(n)); }
  double norm_sq() const { return amps_.squaredNorm(); }
  /// Probability mass estimated to lie outside the truncated basis.
  double norm_loss() const { return norm_loss_; }

 private:
  Eigen::VectorXcd amps_;
  double norm_loss_ = 0.0;
};

class FockOperator {
 public:
  FockOperator() = default;
  explicit FockOperator(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw DimensionMismatch("Fock operator must be square");
  }

  static FockOperator identity(std::size_t dim) {
    return FockOperator(Eigen::MatrixXcd::Identity(index(dim), index(dim)));
  }

  static FockOperator annihilation(std::size_t dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(index(dim), index(dim));
    for (Eigen::Index n = 1; n < index(dim); ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return FockOperator(std::move(a));
  }

  static FockOperator creation(std::size_t dim) { return annihilation(dim).adjoint(); }

  static FockOperator number(std::size_t dim) {
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(index(dim), index(dim));
    for (Eigen::Index k = 0; k < index(dim); ++k) n(k, k) = static_cast<double>(k);
    return FockOperator(std::move(n));
  }

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  FockOperator adjoint() const { return FockOperator(entries_.adjoint()); }

  friend FockOperator operator*(const FockOperator& lhs, const FockOperator& rhs) {
    check_dims(lhs.dim(), rhs.dim());
    return FockOperator(lhs.entries_ * rhs.entries_);
  }
  friend FockOperator operator+(const FockOperator& lhs, const FockOperator& rhs) {
    check_dims(lhs.dim(), rhs.dim());
    return FockOperator(lhs.entries_ + rhs.entries_);
  }
  friend FockOperator operator-(const FockOperator& lhs, const FockOperator& rhs) {
    check_dims(lhs.dim(), rhs.dim());
    return FockOperator(lhs.entries_ - rhs.entries_);
  }
  friend FockOperator operator*(cplx scale, const FockOperator& op) { return FockOperator(scale * op.entries_); }

  FockVector apply(const FockVector& v) const {
    check_dims(dim(), v.dim());
    return FockVector(entries_ * v.amps(), v.norm_loss());
  }

  /// Largest entry modulus of the leading block of the given size.
  double block_max_abs(std::size_t block) const {
    const Eigen::Index b = std::min(index(block), entries_.rows());
    return entries_.topLeftCorner(b, b).cwiseAbs().maxCoeff();
  }

  static void check_dims(std::size_t a, std::size_t b) {
    if (a != b) {
      throw DimensionMismatch("Fock dimensions differ: " + std::to_string(a) + " vs " + std::to_string(b));
    }
  }

 private:
  static Eigen::Index index(std::size_t n) { return static_cast<Eigen::Index>(n); }

  Eigen::MatrixXcd entries_;
};

/// Density operator; Hermitian, unit trace, positive semidefinite.
class FockDensity {
 public:
  FockDensity() = default;
  explicit FockDensity(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw DimensionMismatch("density must be square");
  }

  static FockDensity pure(const FockVector& v) { return FockDensity(v.amps() * v.amps().adjoint()); }

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  cplx trace() const { return entries_.trace(); }
  double hermiticity_defect() const { return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff(); }
  double min_eigenvalue() const {
    const Eigen::MatrixXcd herm = 0.5 * (entries_ + entries_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }

 private:
  Eigen::MatrixXcd entries_;
};

inline constexpr double kNormLossLimit = 1e-10;
/// Weight allowed in the top quarter of the basis before the state is
/// considered to feel the truncation.
inline constexpr double kTailWeightLimit = 1e-16;

/// Starting dimension for a state with coherent amplitudes up to `magnitude`
/// squeezed by r.
inline std::size_t truncation_heuristic(double magnitude, double r) {
  const double reach = magnitude * std::exp(r) + 3.0;
  return std::max<std::size_t>(120, static_cast<std::size_t>(std::ceil(reach * reach + 10.0)));
}

/// Amplitudes e^{-|a|^2/2} a^n / sqrt(n!) by the recurrence c_n = c_{n-1} a / sqrt(n).
inline FockVector coherent_vector(const CoherentLabel& label, std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("Fock dimension must be >= 2");
  const cplx alpha = label.value();
  const double mag = label.magnitude();
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(dim));
  amps(0) = std::exp(-0.5 * mag * mag);
  for (Eigen::Index n = 1; n < amps.size(); ++n) {
    amps(n) = amps(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  const double loss = std::max(0.0, 1.0 - amps.squaredNorm());
  if (loss >= kNormLossLimit) {
    throw TruncationTooSmall("coherent state |" + std::to_string(mag) + "> loses " + std::to_string(loss) +
                             " of its norm at dimension " + std::to_string(dim));
  }
  return FockVector(std::move(amps), loss);
}

namespace detail {

// The generator K = (conj(zeta) a^2 - zeta a^dag^2)/2 couples n and n+2 only.
// With W = diag(e^{i n delta/2}) it becomes W K_r W^dag where K_r is real,
// antisymmetric and tridiagonal inside each parity sector; a further
// diag(i^k) similarity turns K_r into i times a real symmetric tridiagonal
// matrix, whose eigendecomposition gives exp(K) exactly up to rounding.
inline Eigen::MatrixXcd squeeze_matrix(const SqueezeParams& sq, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d, d);
  const double r = sq.amplitude();
  const double delta = sq.phase();
  static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

  for (Eigen::Index parity = 0; parity < 2; ++parity) {
    const Eigen::Index size = (d - parity + 1) / 2;
    if (size == 0) continue;
    Eigen::MatrixXd vectors = Eigen::MatrixXd::Identity(size, size);
    Eigen::VectorXd values = Eigen::VectorXd::Zero(size);
    if (size > 1 && r > 0.0) {
      Eigen::VectorXd diag = Eigen::VectorXd::Zero(size);
      Eigen::VectorXd sub(size - 1);
      for (Eigen::Index k = 0; k + 1 < size; ++k) {
        const double n = static_cast<double>(2 * k + parity);
        sub(k) = 0.5 * r * std::sqrt((n + 1.0) * (n + 2.0));
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
      solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      vectors = solver.eigenvectors();
      values = solver.eigenvalues();
    }
    const Eigen::VectorXcd phases = (cplx(0.0, 1.0) * values.cast<cplx>()).array().exp().matrix();
    const Eigen::MatrixXcd block = vectors.cast<cplx>() * phases.asDiagonal() * vectors.transpose().cast<cplx>();
    for (Eigen::Index km = 0; km < size; ++km) {
      const Eigen::Index m = 2 * km + parity;
      const cplx left = std::polar(1.0, 0.5 * delta * static_cast<double>(m)) * kIPow[km % 4];
      for (Eigen::Index kn = 0; kn < size; ++kn) {
        const Eigen::Index n = 2 * kn + parity;
        const cplx right = std::polar(1.0, -0.5 * delta * static_cast<double>(n)) * std::conj(kIPow[kn % 4]);
        s(m, n) = left * block(km, kn) * right;
      }
    }
  }
  return s;
}

inline double tail_weight(const Eigen::VectorXcd& amps) {
  const Eigen::Index start = amps.size() - amps.size() / 4;
  return amps.tail(amps.size() - start).squaredNorm();
}

}  // namespace detail

/// S(zeta) = exp((conj(zeta) a^2 - zeta a^dag^2)/2) on the truncated basis.
///
/// The truncated generator stays anti-Hermitian, so the result is unitary
/// to rounding on the whole basis. Throws TruncationTooSmall if the
/// unitarity defect on the lower D/2 block exceeds 1e-8.
inline FockOperator squeeze_operator(const SqueezeParams& sq, std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("Fock dimension must be >= 2");
  FockOperator s(detail::squeeze_matrix(sq, dim));
  const auto half = static_cast<Eigen::Index>(dim / 2);
  const Eigen::MatrixXcd gram = s.entries().adjoint() * s.entries();
  const double defect =
      (gram.topLeftCorner(half, half) - Eigen::MatrixXcd::Identity(half, half)).cwiseAbs().maxCoeff();
  if (defect > 1e-8) {
    throw TruncationTooSmall("squeeze operator unitarity defect " + std::to_string(defect));
  }
  return s;
}

/// exp(K) v for the squeeze generator K without forming any matrix.
///
/// Taylor steps of size h with h * ||K||_1 <= 2, each summed to 1e-18
/// relative accuracy. Independent of the eigendecomposition route above.
inline FockVector apply_squeeze(const SqueezeParams& sq, const FockVector& v) {
  const auto d = static_cast<Eigen::Index>(v.dim());
  const double r = sq.amplitude();
  if (r == 0.0 || d < 3) return v;
  const cplx zeta = sq.zeta();

  std::vector<double> pair(static_cast<std::size_t>(d), 0.0);  // sqrt((n+1)(n+2))
  for (Eigen::Index n = 0; n + 2 < d; ++n) {
    pair[static_cast<std::size_t>(n)] = std::sqrt((n + 1.0) * (n + 2.0));
  }
  const double kappa = r * pair[static_cast<std::size_t>(std::max<Eigen::Index>(0, d - 3))];
  const auto steps = static_cast<int>(std::max(1.0, std::ceil(0.5 * kappa)));
  const double h = 1.0 / steps;
  const cplx up = 0.5 * std::conj(zeta) * h;  // coefficient on v_{n+2}
  const cplx down = -0.5 * zeta * h;          // coefficient on v_{n-2}

  Eigen::VectorXcd state = v.amps();
  Eigen::VectorXcd term(d);
  Eigen::VectorXcd next(d);
  for (int step = 0; step < steps; ++step) {
    term = state;
    Eigen::VectorXcd acc = state;
    const double scale = state.norm();
    for (int k = 1; k < 60; ++k) {
      for (Eigen::Index n = 0; n < d; ++n) {
        cplx value = 0.0;
        if (n + 2 < d) value += up * pair[static_cast<std::size_t>(n)] * term(n + 2);
        if (n >= 2) value += down * pair[static_cast<std::size_t>(n - 2)] * term(n - 2);
        next(n) = value / static_cast<double>(k);
      }
      term.swap(next);
      acc += term;
      if (term.norm() <= 1e-18 * scale) break;
    }
    state = acc;
  }
  return FockVector(std::move(state), v.norm_loss());
}

/// A|alpha> + e^{i psi} B|beta> before any normalization.
inline FockVector superposition_vector(const CatParams& cat, std::size_t dim) {
  const FockVector a = coherent_vector(cat.alpha(), dim);
  const FockVector b = coherent_vector(cat.beta(), dim);
  Eigen::VectorXcd amps = cat.weight_a() * a.amps() + std::polar(cat.weight_b(), cat.psi()) * b.amps();
  return FockVector(std::move(amps), std::max(a.norm_loss(), b.norm_loss()));
}

/// S(zeta)(A|alpha> + e^{i psi} B|beta>)/N_psi, normalized in the truncated basis.
inline FockVector cat_vector(const CatParams& cat, const SqueezeParams& sq, std::size_t dim) {
  const FockVector raw = superposition_vector(cat, dim);
  const double raw_norm = std::sqrt(raw.norm_sq());
  if (raw_norm * raw_norm <= CatParams::kDegenerateRadicand) throw DegenerateCat("cat vector vanishes");
  if (std::abs(raw_norm - cat.normalization()) > 1e-8) {
    throw TruncationTooSmall("cat norm " + std::to_string(raw_norm) + " disagrees with N_psi " +
                             std::to_string(cat.normalization()));
  }
  FockVector squeezed = apply_squeeze(sq, raw);
  const double norm_sq = squeezed.norm_sq();
  const double tail = detail::tail_weight(squeezed.amps()) / norm_sq;
  if (tail >= kTailWeightLimit) {
    throw TruncationTooSmall("squeezed cat reaches the top of the basis (tail weight " + std::to_string(tail) +
                             ") at dimension " + std::to_string(dim));
  }
  return FockVector(squeezed.amps() / std::sqrt(norm_sq), std::max(tail, raw.norm_loss()));
}

/// cat_vector at the first dimension, starting from the heuristic and
/// doubling, at which the state no longer feels the truncation.
inline FockVector converged_cat_vector(const CatParams& cat, const SqueezeParams& sq, std::size_t max_dim = 8192) {
  const double reach = std::max(cat.alpha().magnitude(), cat.beta().magnitude());
  for (std::size_t dim = truncation_heuristic(reach, sq.amplitude()); dim <= max_dim; dim *= 2) {
    try {
      return cat_vector(cat, sq, dim);
    } catch (const TruncationTooSmall&) {
    }
  }
  throw TruncationTooSmall("no converged dimension up to " + std::to_string(max_dim));
}

/// rho_sm = A^2 |alpha><alpha| + B^2 |beta><beta| with N = 1.
inline FockDensity mixture_density(const CatParams& cat, std::size_t dim) {
  const FockVector a = coherent_vector(cat.alpha(), dim);
  const FockVector b = coherent_vector(cat.beta(), dim);
  const double wa = cat.weight_a() * cat.weight_a();
  const double wb = cat.weight_b() * cat.weight_b();
  Eigen::MatrixXcd rho = wa * a.amps() * a.amps().adjoint() + wb * b.amps() * b.amps().adjoint();
  return FockDensity(std::move(rho));
}

inline cplx expectation(const FockOperator& op, const FockVector& state) {
  FockOperator::check_dims(op.dim(), state.dim());
  return state.amps().dot(op.entries() * state.amps());
}

inline cplx expectation(const FockOperator& op, const FockDensity& rho) {
  FockOperator::check_dims(op.dim(), rho.dim());
  return (rho.entries() * op.entries()).trace();
}

namespace detail {

inline double bracket_from_amplitudes(const FockVector& psi) {
  double total = 0.0;
  // (a a^dag)_{nn} = n + 1 except on the top state, which a^dag annihilates.
  for (Eigen::Index n = 0; n + 1 < psi.amps().size(); ++n) {
    total += static_cast<double>(n + 1) * std::norm(psi.amps()(n));
  }
  return total;
}

}  // namespace detail

/// <Psi| a a^dag |Psi> in the squeezed cat, from the Fock amplitudes.
inline double excitation_bracket_oracle(const CatParams& cat, const SqueezeParams& sq, std::size_t dim) {
  return detail::bracket_from_amplitudes(cat_vector(cat, sq, dim));
}

/// Same, at an automatically converged dimension.
inline double excitation_bracket_oracle(const CatParams& cat, const SqueezeParams& sq) {
  return detail::bracket_from_amplitudes(converged_cat_vector(cat, sq));
}

/// Plain-text dump: one "index re im" line per amplitude after a '#' header.
inline void dump_vector(const FockVector& v, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "# fock-vector dim=" << v.dim() << "\n";
  out << std::setprecision(17);
  for (std::size_t n = 0; n < v.dim(); ++n) out << n << ' ' << v[n].real() << ' ' << v[n].imag() << '\n';
  if (!out) throw IoError("write failed: " + path);
}

/// Same format with a row-major flat index (row * dim + col).
inline void dump_operator(const FockOperator& op, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "# fock-operator dim=" << op.dim() << " index=row*dim+col\n";
  out << std::setprecision(17);
  const auto d = static_cast<Eigen::Index>(op.dim());
  for (Eigen::Index row = 0; row < d; ++row) {
    for (Eigen::Index col = 0; col < d; ++col) {
      const cplx z = op.entries()(row, col);
      out << row * d + col << ' ' << z.real() << ' ' << z.imag() << '\n';
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace catlab
