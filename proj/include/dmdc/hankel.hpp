#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "dmdc/signal_model.hpp"

namespace dmdc {

enum class Arrangement { single_series, snapshots, ensemble_by_time, ensemble_by_series };

/// The shifted data matrices (X, Y) of one of the four arrangements.
struct DelayMatrixPair {
  Eigen::MatrixXcd X;
  Eigen::MatrixXcd Y;
  Arrangement arrangement = Arrangement::single_series;
  int n = 0;             // component dimension
  int d = 0;             // delay count
  int series_count = 0;  // N, ensemble arrangements only
};

/// Hankel delay matrices of one series (n x (T+1)): X columns are the
/// stacked delayed observables z(0..T-d-1), Y columns z(1..T-d).
DelayMatrixPair build_single_series(const Eigen::MatrixXcd& series, int d);

/// Unordered snapshot pairs (z(t), z(t+1)) as columns.
DelayMatrixPair build_snapshots(
    const std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>>& pairs);

/// Ensemble arrangement with one column per series: column i of X stacks
/// y_i(0..d), Y stacks y_i(1..d+1). Shape (d+1)n x N.
DelayMatrixPair build_ensemble_by_time(const SeriesEnsemble& ensemble, int d);

/// Ensemble arrangement viewing all series as one large system: row block i
/// of X holds y_i(0..d-1), of Y holds y_i(1..d). Shape nN x d, consuming
/// d+1 samples per series.
DelayMatrixPair build_ensemble_by_series(const SeriesEnsemble& ensemble, int d);

}  // namespace dmdc
