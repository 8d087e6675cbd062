#include "dmdc/features.hpp"

#include <cmath>
#include <stdexcept>

#include "dmdc/matrix_pencil.hpp"

namespace dmdc {

FitResult fit(const DelayMatrixPair& pair, const TruncationPolicy& policy) {
  if (pair.arrangement != Arrangement::ensemble_by_series)
    throw std::invalid_argument("fit requires the ensemble_by_series arrangement");

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pair.X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int rank = select_rank(svd.singularValues(), policy);
  const Eigen::MatrixXcd U = svd.matrixU().leftCols(rank);
  const Eigen::MatrixXcd V = svd.matrixV().leftCols(rank);
  const Eigen::VectorXd sigma = svd.singularValues().head(rank);

  const Eigen::MatrixXcd reduced =
      U.adjoint() * pair.Y * V * sigma.cwiseInverse().asDiagonal();
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd right, inv;
  detail::eigendecompose(reduced, eigenvalues, right, inv);
  Eigen::MatrixXcd W = inv;  // rows are left eigenvectors of K^
  // Canonical row scale: unit norm, so Q rows (W U*) are unit norm too and
  // feature magnitudes are comparable across modes.
  for (Eigen::Index j = 0; j < W.rows(); ++j) {
    const double norm = W.row(j).norm();
    if (norm > 0.0) W.row(j) /= norm;
  }

  FitResult result;
  result.model.rank = rank;
  result.model.n = pair.n;
  result.model.eigenvalues = eigenvalues;
  result.model.embed_operator = W * sigma.cwiseInverse().asDiagonal() * V.adjoint();
  result.Q = W * U.adjoint();
  result.singular_values = svd.singularValues();
  return result;
}

FeatureSet extract(const Eigen::MatrixXcd& Q, int n, int N) {
  if (Q.cols() != static_cast<Eigen::Index>(n) * N)
    throw std::invalid_argument("Q column count does not equal n*N");
  FeatureSet set;
  set.features.reserve(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i)
    set.features.push_back(Q.middleCols(i * n, n).cwiseAbs());
  return set;
}

double distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("feature shape mismatch");
  return (a - b).norm();
}

Eigen::MatrixXd embed(const FeatureModel& model, const Eigen::MatrixXcd& series) {
  const Eigen::Index d = model.embed_operator.cols();
  if (series.rows() != model.n || series.cols() != d)
    throw std::invalid_argument("series shape does not match the trained model");
  // Snapshot column block of X^*: (t, k) entry conj(y_k(t)).
  const Eigen::MatrixXcd snapshot = series.adjoint();
  return (model.embed_operator * snapshot).cwiseAbs();
}

namespace {

struct PartitionGroundTruth {
  std::vector<Complex> distinct;            // unique frequencies across partitions
  std::vector<std::vector<bool>> exhibits;  // [partition][distinct index]
};

PartitionGroundTruth collect_frequencies(const SeriesEnsemble& ensemble) {
  if (ensemble.noise_sigma != 0.0)
    throw std::invalid_argument("zero-structure check requires a noise-free ensemble");
  if (ensemble.labels.size() != ensemble.series.size() ||
      ensemble.partition_frequencies.empty())
    throw std::invalid_argument("ensemble lacks partition ground truth");

  PartitionGroundTruth gt;
  for (const auto& freqs : ensemble.partition_frequencies)
    for (const Complex& f : freqs) {
      bool found = false;
      for (const Complex& g : gt.distinct)
        if (std::abs(f - g) < 1e-9) found = true;
      if (!found) gt.distinct.push_back(f);
    }
  for (const auto& freqs : ensemble.partition_frequencies) {
    std::vector<bool> mask(gt.distinct.size(), false);
    for (const Complex& f : freqs)
      for (std::size_t u = 0; u < gt.distinct.size(); ++u)
        if (std::abs(f - gt.distinct[u]) < 1e-9) mask[u] = true;
    gt.exhibits.push_back(mask);
  }
  return gt;
}

int numerical_rank(const Eigen::VectorXd& sv, double rel_tol = 1e-9) {
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  return r;
}

// Match each estimated eigenvalue to a distinct true frequency; noise-free
// recovery must be tight or the premises were not met.
std::vector<int> match_eigenvalues(const Eigen::VectorXcd& eigenvalues,
                                   const std::vector<Complex>& distinct) {
  std::vector<int> matched(static_cast<std::size_t>(eigenvalues.size()), -1);
  for (Eigen::Index j = 0; j < eigenvalues.size(); ++j) {
    double best = 1e300;
    for (std::size_t u = 0; u < distinct.size(); ++u) {
      const double dist = std::abs(eigenvalues(j) - distinct[u]);
      if (dist < best) {
        best = dist;
        matched[static_cast<std::size_t>(j)] = static_cast<int>(u);
      }
    }
    if (best > 1e-6) throw std::runtime_error("proposition premises unmet");
  }
  return matched;
}

// Eigenvectors of a singular pencil are defined modulo the common null
// space of (X, Y); shared frequencies between partitions make that space
// interact with the off-support entries. The checks below therefore
// measure the nearest structured representative: the computed vector is
// corrected by the best common-null combination before the off-support
// magnitudes are read.
Eigen::MatrixXcd common_left_null_rows(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y) {
  Eigen::MatrixXcd stacked(X.rows(), X.cols() + Y.cols());
  stacked << X, Y;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullU);
  const int r = numerical_rank(svd.singularValues());
  return svd.matrixU().rightCols(svd.matrixU().cols() - r).adjoint();
}

Eigen::MatrixXcd common_right_null_cols(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y) {
  Eigen::MatrixXcd stacked(X.rows() + Y.rows(), X.cols());
  stacked << X, Y;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
  const int r = numerical_rank(svd.singularValues());
  return svd.matrixV().rightCols(svd.matrixV().cols() - r);
}

// Max |entry| over the given indices of the corrected, unit-norm vector.
double structured_residual(const Eigen::VectorXcd& v, const Eigen::MatrixXcd& null_cols,
                           const std::vector<int>& off) {
  if (off.empty()) return 0.0;
  Eigen::VectorXcd corrected = v;
  if (null_cols.cols() > 0) {
    Eigen::MatrixXcd M(static_cast<Eigen::Index>(off.size()), null_cols.cols());
    Eigen::VectorXcd v_off(static_cast<Eigen::Index>(off.size()));
    for (std::size_t i = 0; i < off.size(); ++i) {
      M.row(static_cast<Eigen::Index>(i)) = null_cols.row(off[i]);
      v_off(static_cast<Eigen::Index>(i)) = v(off[i]);
    }
    const Eigen::VectorXcd c = M.completeOrthogonalDecomposition().solve(-v_off);
    corrected += null_cols * c;
  }
  double worst = 0.0;
  for (int idx : off) worst = std::max(worst, std::abs(corrected(idx)));
  return worst / corrected.norm();
}

}  // namespace

double verify_proposition_zero_structure(const SeriesEnsemble& ensemble, int d) {
  const PartitionGroundTruth gt = collect_frequencies(ensemble);
  const int l = static_cast<int>(gt.distinct.size());

  std::size_t total_modes = 0;
  for (const auto& freqs : ensemble.partition_frequencies) total_modes += freqs.size();
  if (d < static_cast<int>(total_modes))
    throw std::invalid_argument("proposition premises unmet");

  const DelayMatrixPair pair = build_ensemble_by_series(ensemble, d);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pair.X);
  if (numerical_rank(svd.singularValues()) != l)
    throw std::runtime_error("proposition premises unmet");

  const FitResult result = fit(pair, TruncationPolicy::fixed(l));
  const auto matched = match_eigenvalues(result.model.eigenvalues, gt.distinct);

  // Independent left generalized eigenvector count must equal l.
  Eigen::JacobiSVD<Eigen::MatrixXcd> qsvd(result.Q);
  if (numerical_rank(qsvd.singularValues()) != l)
    throw std::runtime_error("proposition premises unmet");

  const int n = pair.n;
  // Null rows transposed (not conjugated): corrections act on q^T.
  const Eigen::MatrixXcd null_cols = common_left_null_rows(pair.X, pair.Y).transpose();
  double worst = 0.0;
  for (int j = 0; j < l; ++j) {
    const int freq = matched[static_cast<std::size_t>(j)];
    std::vector<int> off;
    for (int i = 0; i < pair.series_count; ++i) {
      const int partition = ensemble.labels[static_cast<std::size_t>(i)] - 1;
      if (gt.exhibits[static_cast<std::size_t>(partition)][static_cast<std::size_t>(freq)])
        continue;
      for (int c = 0; c < n; ++c) off.push_back(i * n + c);
    }
    worst = std::max(worst,
                     structured_residual(result.Q.row(j).transpose(), null_cols, off));
  }
  return worst;
}

double verify_proposition1_zero_structure(const SeriesEnsemble& ensemble, int d) {
  if (ensemble.dimension() != 1)
    throw std::invalid_argument("proposition 1 check supports n = 1 only");
  const PartitionGroundTruth gt = collect_frequencies(ensemble);
  const int l = static_cast<int>(gt.distinct.size());

  const DelayMatrixPair pair = build_ensemble_by_time(ensemble, d);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pair.X);
  if (numerical_rank(svd.singularValues()) != l)
    throw std::runtime_error("proposition premises unmet");

  const PencilDecomposition dec = pencil_decompose(pair, l);
  const auto matched = match_eigenvalues(dec.eigenvalues, gt.distinct);

  const Eigen::MatrixXcd null_cols = common_right_null_cols(pair.X, pair.Y);
  double worst = 0.0;
  for (int j = 0; j < l; ++j) {
    const int freq = matched[static_cast<std::size_t>(j)];
    std::vector<int> off;
    for (int i = 0; i < pair.series_count; ++i) {
      const int partition = ensemble.labels[static_cast<std::size_t>(i)] - 1;
      if (gt.exhibits[static_cast<std::size_t>(partition)][static_cast<std::size_t>(freq)])
        continue;
      off.push_back(i);
    }
    worst = std::max(worst, structured_residual(dec.right_gen_eigs.col(j), null_cols, off));
  }
  return worst;
}

}  // namespace dmdc
