#include "dmdc/hankel.hpp"

#include <stdexcept>

namespace dmdc {

DelayMatrixPair build_single_series(const Eigen::MatrixXcd& series, int d) {
  const int n = static_cast<int>(series.rows());
  const int samples = static_cast<int>(series.cols());
  if (d < 0) throw std::invalid_argument("d must be >= 0");
  if (samples < d + 2) throw std::invalid_argument("need at least d+2 samples");

  const int cols = samples - d - 1;  // M = T - d with T = samples - 1
  DelayMatrixPair pair;
  pair.arrangement = Arrangement::single_series;
  pair.n = n;
  pair.d = d;
  pair.X.resize((d + 1) * n, cols);
  pair.Y.resize((d + 1) * n, cols);
  for (int m = 0; m < cols; ++m)
    for (int k = 0; k <= d; ++k) {
      pair.X.block(k * n, m, n, 1) = series.col(m + k);
      pair.Y.block(k * n, m, n, 1) = series.col(m + k + 1);
    }
  return pair;
}

DelayMatrixPair build_snapshots(
    const std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("no snapshot pairs");
  const auto dim = pairs[0].first.size();
  for (const auto& [z0, z1] : pairs)
    if (z0.size() != dim || z1.size() != dim)
      throw std::invalid_argument("mixed snapshot dimensions");

  DelayMatrixPair pair;
  pair.arrangement = Arrangement::snapshots;
  pair.n = static_cast<int>(dim);
  pair.d = 0;
  pair.X.resize(dim, static_cast<Eigen::Index>(pairs.size()));
  pair.Y.resize(dim, static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t m = 0; m < pairs.size(); ++m) {
    pair.X.col(static_cast<Eigen::Index>(m)) = pairs[m].first;
    pair.Y.col(static_cast<Eigen::Index>(m)) = pairs[m].second;
  }
  return pair;
}

namespace {

void check_uniform(const SeriesEnsemble& ensemble, int min_samples) {
  if (ensemble.series.empty()) throw std::invalid_argument("empty ensemble");
  const auto n = ensemble.series[0].rows();
  const auto len = ensemble.series[0].cols();
  for (const auto& s : ensemble.series)
    if (s.rows() != n || s.cols() != len)
      throw std::invalid_argument("ragged ensemble");
  if (len < min_samples) throw std::invalid_argument("series too short for d");
}

}  // namespace

DelayMatrixPair build_ensemble_by_time(const SeriesEnsemble& ensemble, int d) {
  if (d < 0) throw std::invalid_argument("d must be >= 0");
  check_uniform(ensemble, d + 2);

  const int n = ensemble.dimension();
  const int N = ensemble.series_count();
  DelayMatrixPair pair;
  pair.arrangement = Arrangement::ensemble_by_time;
  pair.n = n;
  pair.d = d;
  pair.series_count = N;
  pair.X.resize((d + 1) * n, N);
  pair.Y.resize((d + 1) * n, N);
  for (int i = 0; i < N; ++i)
    for (int k = 0; k <= d; ++k) {
      pair.X.block(k * n, i, n, 1) = ensemble.series[static_cast<std::size_t>(i)].col(k);
      pair.Y.block(k * n, i, n, 1) = ensemble.series[static_cast<std::size_t>(i)].col(k + 1);
    }
  return pair;
}

DelayMatrixPair build_ensemble_by_series(const SeriesEnsemble& ensemble, int d) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  check_uniform(ensemble, d + 1);

  const int n = ensemble.dimension();
  const int N = ensemble.series_count();
  DelayMatrixPair pair;
  pair.arrangement = Arrangement::ensemble_by_series;
  pair.n = n;
  pair.d = d;
  pair.series_count = N;
  pair.X.resize(n * N, d);
  pair.Y.resize(n * N, d);
  for (int i = 0; i < N; ++i) {
    const auto& s = ensemble.series[static_cast<std::size_t>(i)];
    pair.X.block(i * n, 0, n, d) = s.leftCols(d);
    pair.Y.block(i * n, 0, n, d) = s.middleCols(1, d);
  }
  return pair;
}

}  // namespace dmdc
