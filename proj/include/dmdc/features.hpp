#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dmdc/dmd.hpp"
#include "dmdc/hankel.hpp"

namespace dmdc {

/// Trained feature embedding: W^ S^-1 V* applied to conjugated snapshots
/// maps a length-d series into the feature space.
struct FeatureModel {
  int rank = 0;                     // l-bar
  int n = 0;                        // component dimension
  Eigen::MatrixXcd embed_operator;  // rank x d
  Eigen::VectorXcd eigenvalues;
};

/// Per-series nonnegative feature blocks q_i, each rank x n.
struct FeatureSet {
  std::vector<Eigen::MatrixXd> features;

  int count() const { return static_cast<int>(features.size()); }
};

struct FitResult {
  FeatureModel model;
  Eigen::MatrixXcd Q;  // rank x nN, rows are generalized right eigenvectors
  Eigen::VectorXd singular_values;
};

/// Feature fit on an ensemble_by_series pair: truncated SVD of X^, left
/// eigenvectors W^ of K^ = U* Y^ V S^-1, and Q = W^ U*.
FitResult fit(const DelayMatrixPair& pair, const TruncationPolicy& policy);

/// Splits |Q| into N blocks of n columns each.
FeatureSet extract(const Eigen::MatrixXcd& Q, int n, int N);

/// Frobenius distance between feature blocks.
double distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Out-of-sample embedding of one series (n x d) into the feature space.
Eigen::MatrixXd embed(const FeatureModel& model, const Eigen::MatrixXcd& series);

/// Numerical check of the zero structure of the ensemble_by_series pencil:
/// on a noise-free labelled ensemble, returns the max normalized feature
/// magnitude over (eigenvalue, series) pairs where the series' partition
/// does not exhibit that eigenvalue's frequency. Eigenvectors of a
/// singular pencil are defined modulo the common null space, so each row
/// is first corrected to its nearest structured representative.
double verify_proposition_zero_structure(const SeriesEnsemble& ensemble, int d);

/// Same check on the ensemble_by_time arrangement via right generalized
/// eigenvectors; n = 1 only.
double verify_proposition1_zero_structure(const SeriesEnsemble& ensemble, int d);

}  // namespace dmdc
