#include "dmdc/matrix_pencil.hpp"

#include <stdexcept>
#include <vector>

namespace dmdc {

PencilDecomposition pencil_decompose(const SvdFactors& svd, const Eigen::MatrixXcd& Y) {
  PencilDecomposition dec;
  dec.rank = static_cast<int>(svd.sigma.size());
  dec.sigma = svd.sigma;
  dec.pencil_operator =
      svd.sigma.cwiseInverse().asDiagonal() * (svd.U.adjoint() * Y * svd.V);

  Eigen::MatrixXcd inv;
  detail::eigendecompose(dec.pencil_operator, dec.eigenvalues, dec.eigvecs, inv);
  dec.right_gen_eigs = svd.V * dec.eigvecs;
  dec.left_gen_eigs = inv * svd.sigma.cwiseInverse().asDiagonal() * svd.U.adjoint();
  return dec;
}

PencilDecomposition pencil_decompose(const DelayMatrixPair& pair, int rank) {
  return pencil_decompose(truncated_svd(pair.X, rank), pair.Y);
}

double verify_similarity(const SpectralDecomposition& dmd_dec,
                         const PencilDecomposition& pencil_dec) {
  if (dmd_dec.rank != pencil_dec.rank) throw std::invalid_argument("rank mismatch");
  // K~ = U* Y V S^-1 and L~ = S^-1 U* Y V, so L~ = S^-1 K~ S.
  const Eigen::MatrixXcd similar = dmd_dec.sigma.cwiseInverse().asDiagonal() *
                                   dmd_dec.reduced_operator * dmd_dec.sigma.asDiagonal();
  const double denom = std::max(1.0, pencil_dec.pencil_operator.norm());
  return (pencil_dec.pencil_operator - similar).norm() / denom;
}

namespace {

Eigen::MatrixXcd canonical_rows(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd t = m.transpose();
  detail::canonicalize_columns(t);
  return t.transpose();
}

}  // namespace

double verify_adjoint_mode_match(const SpectralDecomposition& dmd_dec,
                                 const PencilDecomposition& pencil_dec) {
  if (dmd_dec.rank != pencil_dec.rank) throw std::invalid_argument("rank mismatch");
  const int r = dmd_dec.rank;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      if (std::abs(dmd_dec.eigenvalues(a) - dmd_dec.eigenvalues(b)) < 1e-9)
        throw std::runtime_error("degenerate spectrum, match undefined");

  // The canonical order can differ between the two spectra when magnitudes
  // nearly tie, so pair rows by eigenvalue proximity.
  std::vector<int> match(static_cast<std::size_t>(r), -1);
  std::vector<bool> taken(static_cast<std::size_t>(r), false);
  for (int j = 0; j < r; ++j) {
    int best = -1;
    double best_dist = 1e300;
    for (int k = 0; k < r; ++k) {
      if (taken[static_cast<std::size_t>(k)]) continue;
      const double dist = std::abs(dmd_dec.eigenvalues(j) - pencil_dec.eigenvalues(k));
      if (dist < best_dist) {
        best_dist = dist;
        best = k;
      }
    }
    if (best < 0 || best_dist > 1e-6) throw std::runtime_error("eigenvalue pairing failed");
    taken[static_cast<std::size_t>(best)] = true;
    match[static_cast<std::size_t>(j)] = best;
  }

  const Eigen::MatrixXcd a = canonical_rows(dmd_dec.adjoint_modes);
  const Eigen::MatrixXcd b = canonical_rows(pencil_dec.left_gen_eigs);
  double worst = 0.0;
  for (int j = 0; j < r; ++j)
    worst = std::max(worst, (a.row(j) - b.row(match[static_cast<std::size_t>(j)])).norm());
  return worst;
}

}  // namespace dmdc
