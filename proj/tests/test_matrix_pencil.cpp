#include <random>

#include "dmdc/matrix_pencil.hpp"
#include "dmdc/signal_model.hpp"
#include "doctest.h"

using namespace dmdc;

namespace {

DelayMatrixPair pair_from(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
  DelayMatrixPair p;
  p.X = x;
  p.Y = y;
  p.arrangement = Arrangement::snapshots;
  p.n = static_cast<int>(x.rows());
  return p;
}

}  // namespace

TEST_CASE("pencil: X = Y gives the identity operator") {
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Random(5, 7);
  const auto dec = pencil_decompose(pair_from(x, x), 5);
  CHECK((dec.pencil_operator - Eigen::MatrixXcd::Identity(5, 5)).norm() < 1e-12);
  for (int j = 0; j < 5; ++j) CHECK(std::abs(dec.eigenvalues(j) - Complex(1)) < 1e-12);
}

TEST_CASE("pencil: single decaying mode") {
  DampedSinusoidModel m;
  m.modes = Eigen::MatrixXcd::Constant(1, 1, Complex(1.5));
  m.frequencies = Eigen::VectorXcd::Constant(1, Complex(0.7));
  const auto pair = build_single_series(synthesize(m, 12, 0.0, 0), 1);
  const auto dec = pencil_decompose(pair, 1);
  CHECK(std::abs(dec.eigenvalues(0) - Complex(0.7)) < 1e-10);
}

TEST_CASE("pencil vs dmd: eigenvalue equivalence on the toy ensemble") {
  const auto pair = build_ensemble_by_series(make_toy_ensemble(23), 19);
  const auto svd = truncated_svd(pair.X, 8);
  const auto dmd_dec = decompose(svd, pair.Y);
  const auto pencil_dec = pencil_decompose(svd, pair.Y);
  // Compare as multisets: canonical order may permute near-equal magnitudes.
  for (int j = 0; j < 8; ++j) {
    double best = 1e300;
    for (int k = 0; k < 8; ++k)
      best = std::min(best, std::abs(dmd_dec.eigenvalues(j) - pencil_dec.eigenvalues(k)));
    CHECK(best < 1e-10);
  }
}

TEST_CASE("verify_similarity: algebraic identity on noisy data") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Random(9, 12);
    Eigen::MatrixXcd y = Eigen::MatrixXcd::Random(9, 12);
    const auto svd = truncated_svd(x, 4);
    const auto dmd_dec = decompose(svd, y);
    const auto pencil_dec = pencil_decompose(svd, y);
    CHECK(verify_similarity(dmd_dec, pencil_dec) < 1e-10);
  }
}

TEST_CASE("verify_similarity: zero residual for X = Y") {
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Random(6, 6);
  const auto svd = truncated_svd(x, 6);
  const auto dmd_dec = decompose(svd, x);
  const auto pencil_dec = pencil_decompose(svd, x);
  CHECK(verify_similarity(dmd_dec, pencil_dec) < 1e-12);
}

TEST_CASE("verify_similarity: rank mismatch rejected") {
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Random(6, 8);
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Random(6, 8);
  const auto dmd_dec = decompose(truncated_svd(x, 3), y);
  const auto pencil_dec = pencil_decompose(truncated_svd(x, 4), y);
  CHECK_THROWS_WITH(static_cast<void>(verify_similarity(dmd_dec, pencil_dec)), "rank mismatch");
}

TEST_CASE("verify_adjoint_mode_match: toy ensemble and random spectra") {
  {
    const auto pair = build_ensemble_by_series(make_toy_ensemble(31), 19);
    const auto svd = truncated_svd(pair.X, 8);
    CHECK(verify_adjoint_mode_match(decompose(svd, pair.Y), pencil_decompose(svd, pair.Y)) <
          1e-8);
  }
  {
    // Rank-1: one-dimensional eigenspace, exact match.
    DampedSinusoidModel m;
    m.modes = Eigen::MatrixXcd::Constant(1, 1, Complex(1));
    m.frequencies = Eigen::VectorXcd::Constant(1, Complex(0.8));
    const auto pair = build_single_series(synthesize(m, 10, 0.0, 0), 1);
    const auto svd = truncated_svd(pair.X, 1);
    CHECK(verify_adjoint_mode_match(decompose(svd, pair.Y), pencil_decompose(svd, pair.Y)) <
          1e-12);
  }
  {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Random(10, 14);
    Eigen::MatrixXcd y = Eigen::MatrixXcd::Random(10, 14);
    const auto svd = truncated_svd(x, 5);
    CHECK(verify_adjoint_mode_match(decompose(svd, y), pencil_decompose(svd, y)) < 1e-8);
  }
}

TEST_CASE("verify_adjoint_mode_match: degenerate spectrum rejected") {
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Random(5, 5);
  const auto svd = truncated_svd(x, 5);
  const auto dmd_dec = decompose(svd, x);       // all eigenvalues 1
  const auto pencil_dec = pencil_decompose(svd, x);
  CHECK_THROWS_WITH(static_cast<void>(verify_adjoint_mode_match(dmd_dec, pencil_dec)),
                    "degenerate spectrum, match undefined");
}

TEST_CASE("pencil eigenvector relation W = S^-1 V up to column scale") {
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Random(7, 9);
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Random(7, 9);
  const auto svd = truncated_svd(x, 4);
  const auto dmd_dec = decompose(svd, y);
  const auto pencil_dec = pencil_decompose(svd, y);
  for (int j = 0; j < 4; ++j) {
    Eigen::VectorXcd expected = dmd_dec.sigma.cwiseInverse().asDiagonal() * dmd_dec.eigvecs.col(j);
    expected /= expected.norm();
    Eigen::VectorXcd actual = pencil_dec.eigvecs.col(j);
    actual /= actual.norm();
    // Align phase on the largest component.
    Eigen::Index lead;
    expected.cwiseAbs().maxCoeff(&lead);
    actual *= expected(lead) / actual(lead) / std::abs(expected(lead) / actual(lead));
    CHECK((expected - actual).norm() < 1e-9);
  }
}

TEST_CASE("generalized eigenpair residual on noise-free exact-rank data") {
  DampedSinusoidModel m;
  m.modes.resize(1, 2);
  m.modes << Complex(1, 0.5), Complex(-0.7, 0.2);
  m.frequencies.resize(2);
  m.frequencies << std::exp(Complex(0, 0.4)), std::exp(Complex(0, 1.0));
  const auto pair = build_single_series(synthesize(m, 18, 0.0, 0), 2);
  const auto dec = pencil_decompose(pair, 2);
  const double scale = std::sqrt(pair.X.squaredNorm() + pair.Y.squaredNorm());
  for (int j = 0; j < 2; ++j) {
    const Eigen::RowVectorXcd q = dec.left_gen_eigs.row(j);
    const double residual = (q * (pair.Y - dec.eigenvalues(j) * pair.X)).norm() /
                            (q.norm() * scale);
    CHECK(residual < 1e-8);
  }
}
