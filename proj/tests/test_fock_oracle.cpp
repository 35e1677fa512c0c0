#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "catlab/fock_oracle.hpp"

using namespace catlab;

namespace {

Eigen::MatrixXcd lower_block(const Eigen::MatrixXcd& m, Eigen::Index k) { return m.topLeftCorner(k, k); }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("catlab_test_" + name)).string();
}

}  // namespace

TEST(FockOperator, LadderAlgebra) {
  const std::size_t d = 12;
  const FockOperator a = FockOperator::annihilation(d);
  const FockOperator ad = FockOperator::creation(d);
  const Eigen::MatrixXcd comm = (a * ad - ad * a).entries();
  // [a, a^dag] = 1 except in the top state, where truncation gives 1 - d.
  for (Eigen::Index n = 0; n + 1 < static_cast<Eigen::Index>(d); ++n) EXPECT_NEAR(std::abs(comm(n, n) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(comm(static_cast<Eigen::Index>(d - 1), static_cast<Eigen::Index>(d - 1)).real(), 1.0 - d, 1e-12);
  EXPECT_NEAR(((ad * a).entries() - FockOperator::number(d).entries()).norm(), 0.0, 1e-13);
}

TEST(FockOperator, DimensionMismatchThrows) {
  EXPECT_THROW(FockOperator::annihilation(4) * FockOperator::annihilation(5), DimensionMismatch);
  EXPECT_THROW(expectation(FockOperator::number(4), coherent_vector(CoherentLabel(0.1, 0.0), 5)), DimensionMismatch);
}

TEST(CoherentVector, NormAndTruncation) {
  const FockVector v = coherent_vector(CoherentLabel(2.0, 0.3), 60);
  EXPECT_NEAR(v.norm_sq(), 1.0, 1e-13);
  EXPECT_LT(v.norm_loss(), 1e-13);
  EXPECT_THROW(coherent_vector(CoherentLabel(4.0, 0.0), 12), TruncationTooSmall);
  const cplx mean_a = expectation(FockOperator::annihilation(60), v);
  EXPECT_NEAR(std::abs(mean_a - std::polar(2.0, 0.3)), 0.0, 1e-12);
}

TEST(TruncationHeuristic, Floor) {
  EXPECT_EQ(truncation_heuristic(0.0, 0.0), 120u);
  EXPECT_EQ(truncation_heuristic(3.0, 1.5), static_cast<std::size_t>(std::ceil(std::pow(3.0 * std::exp(1.5) + 3.0, 2) + 10.0)));
}

TEST(SqueezeOperator, UnitaryOnLowerHalf) {
  for (double r : {0.3, 1.0, 1.5}) {
    for (std::size_t d : {120u, 200u}) {
      const FockOperator s = squeeze_operator(SqueezeParams(r, 0.9), d);
      const auto k = static_cast<Eigen::Index>(d / 2);
      const Eigen::MatrixXcd g = lower_block(s.entries().adjoint() * s.entries(), k);
      EXPECT_LT((g - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-8) << r << ' ' << d;
    }
  }
}

TEST(SqueezeOperator, BogoliubovOnConvergedBlock) {
  // S^dag a S = C a - e^{i delta} S a^dag holds where S|n> still fits the basis.
  const std::size_t d = 400;
  const std::size_t block = 24;
  for (double r : {0.5, 1.0}) {
    const SqueezeParams sq(r, 1.1);
    const FockOperator s = squeeze_operator(sq, d);
    const FockOperator a = FockOperator::annihilation(d);
    const FockOperator lhs = s.adjoint() * a * s;
    const FockOperator rhs = cplx(sq.cosh_r()) * a - std::polar(sq.sinh_r(), sq.phase()) * FockOperator::creation(d);
    EXPECT_LT((lhs - rhs).block_max_abs(block), 1e-8) << r;
  }
}

TEST(SqueezeOperator, DenseAgreesWithVectorAction) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t d = 200;
  for (int i = 0; i < 5; ++i) {
    const SqueezeParams sq(1.2 * u(rng), kTwoPi * u(rng));
    const FockVector v = coherent_vector(CoherentLabel(2.0 * u(rng), kTwoPi * u(rng)), d);
    const FockVector dense = squeeze_operator(sq, d).apply(v);
    const FockVector action = apply_squeeze(sq, v);
    EXPECT_LT((dense.amps() - action.amps()).norm(), 1e-10);
  }
}

TEST(SqueezeOperator, SqueezedVacuumPhotonNumber) {
  for (double r : {0.2, 0.8, 1.5}) {
    const SqueezeParams sq(r, 2.0);
    const std::size_t d = 240;
    const FockVector v = squeeze_operator(sq, d).apply(coherent_vector(CoherentLabel{}, d));
    const double n = expectation(FockOperator::number(d), v).real();
    EXPECT_NEAR(n, std::sinh(r) * std::sinh(r), 1e-8) << r;
    // only even photon numbers are populated
    for (std::size_t k = 1; k < d; k += 2) EXPECT_EQ(std::abs(v[k]), 0.0);
  }
}

TEST(CatVector, OddCatHasNoEvenAmplitudes) {
  const FockVector v = cat_vector(CatParams::antipodal(2.0, 0.4, kPi), SqueezeParams(0.7, 0.2), 240);
  double worst = 0.0;
  for (std::size_t k = 0; k < v.dim(); k += 2) worst = std::max(worst, std::abs(v[k]));
  EXPECT_LT(worst, 1e-10);
  EXPECT_NEAR(v.norm_sq(), 1.0, 1e-14);
}

TEST(CatVector, RawNormMatchesNormalization) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const CatParams cat(CoherentLabel(3.0 * u(rng), kTwoPi * u(rng)), CoherentLabel(3.0 * u(rng), kTwoPi * u(rng)),
                        u(rng) + 0.05, u(rng) + 0.05, kTwoPi * u(rng));
    const FockVector raw = superposition_vector(cat, 120);
    EXPECT_NEAR(std::sqrt(raw.norm_sq()), normalization(cat), 1e-10);
  }
}

TEST(CatVector, DetectsTruncation) {
  EXPECT_THROW(cat_vector(CatParams::antipodal(3.0, 0.0, 0.0), SqueezeParams(1.5, kPi), 120), TruncationTooSmall);
  const FockVector v = converged_cat_vector(CatParams::antipodal(3.0, 0.0, 0.0), SqueezeParams(1.5, kPi));
  EXPECT_GT(v.dim(), 120u);
  const auto top = static_cast<Eigen::Index>(3 * v.dim() / 4);
  EXPECT_LT(v.amps().tail(v.amps().size() - top).squaredNorm(), kTailWeightLimit);
}

TEST(ExcitationBracketOracle, CoherentState) {
  for (double mag : {0.0, 0.5, 2.0}) {
    const CatParams c = CatParams::coherent(CoherentLabel(mag, 1.0));
    EXPECT_NEAR(excitation_bracket_oracle(c, SqueezeParams{}, 120), 1.0 + mag * mag, 1e-12);
  }
  EXPECT_NEAR(excitation_bracket_oracle(CatParams::antipodal(1.0, 0.0, 0.0), SqueezeParams{}), 1.0 + std::tanh(1.0),
              1e-12);
}

TEST(MixtureDensity, LosesInterference) {
  for (double mag : {0.5, 1.0, 1.5, 2.0}) {
    const CatParams cat = CatParams::antipodal(mag, 0.0, 0.0);
    const std::size_t d = 80;
    const FockDensity mix = mixture_density(cat, d);
    const FockDensity pure = FockDensity::pure(cat_vector(cat, SqueezeParams{}, d));
    EXPECT_NEAR(mix.trace().real(), 1.0, 1e-12);
    EXPECT_LT(mix.hermiticity_defect(), 1e-15);
    EXPECT_GT(mix.min_eigenvalue(), -1e-12);
    // parity witness: 1 for the even cat, e^{-2|a|^2} for the mixture
    Eigen::VectorXcd parity(static_cast<Eigen::Index>(d));
    for (Eigen::Index n = 0; n < parity.size(); ++n) parity(n) = (n % 2 == 0) ? 1.0 : -1.0;
    const FockOperator p(parity.asDiagonal().toDenseMatrix());
    EXPECT_NEAR(expectation(p, pure).real(), 1.0, 1e-12);
    EXPECT_NEAR(expectation(p, mix).real(), std::exp(-2.0 * mag * mag), 1e-12);
  }
}

TEST(Dump, WritesIndexReIm) {
  const std::string path = temp_path("vec.txt");
  dump_vector(coherent_vector(CoherentLabel(1.0, kPi / 2), 20), path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "# fock-vector dim=20");
  int index = -1;
  double re = 0.0;
  double im = 0.0;
  in >> index >> re >> im;
  EXPECT_EQ(index, 0);
  EXPECT_NEAR(re, std::exp(-0.5), 1e-15);
  in >> index >> re >> im;
  EXPECT_EQ(index, 1);
  EXPECT_NEAR(im, std::exp(-0.5), 1e-15);
  std::filesystem::remove(path);

  const std::string op_path = temp_path("op.txt");
  dump_operator(FockOperator::annihilation(3), op_path);
  std::ifstream op_in(op_path);
  std::getline(op_in, header);
  EXPECT_EQ(header, "# fock-operator dim=3 index=row*dim+col");
  int lines = 0;
  for (std::string line; std::getline(op_in, line);) ++lines;
  EXPECT_EQ(lines, 9);
  std::filesystem::remove(op_path);
  EXPECT_THROW(dump_vector(coherent_vector(CoherentLabel{}, 4), "/nonexistent_dir/x.txt"), IoError);
}
