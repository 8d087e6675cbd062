#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dmdc/hankel.hpp"

namespace dmdc {

/// Rule for picking the truncation rank from a singular value spectrum.
struct TruncationPolicy {
  enum class Kind { fixed_rank, energy, gap };
  Kind kind = Kind::gap;
  int rank = 1;               // fixed_rank
  double threshold = 1e-12;   // energy: cumulative fraction; gap: floor on sigma_r/sigma_1

  static TruncationPolicy fixed(int r) { return {Kind::fixed_rank, r, 0.0}; }
  static TruncationPolicy energy(double tau) { return {Kind::energy, 1, tau}; }
  static TruncationPolicy gap(double floor = 1e-12) { return {Kind::gap, 1, floor}; }
};

/// Truncated SVD factors of a data matrix, shared between the DMD and
/// matrix-pencil routes so that equivalence checks see identical bases.
struct SvdFactors {
  Eigen::MatrixXcd U;       // rows x rank
  Eigen::VectorXd sigma;    // rank
  Eigen::MatrixXcd V;       // cols x rank
  Eigen::VectorXd all_singular_values;
};

int select_rank(const Eigen::VectorXd& singular_values, const TruncationPolicy& policy);

SvdFactors truncated_svd(const Eigen::MatrixXcd& X, int rank);

/// Truncated SVD of X, reduced operator K~ = U* Y V S^-1, and its
/// eigendecomposition lifted back to full order.
struct SpectralDecomposition {
  int rank = 0;
  Eigen::VectorXd singular_values;    // full spectrum of X
  Eigen::VectorXcd eigenvalues;       // canonical order: |.| desc, phase asc
  Eigen::MatrixXcd reduced_operator;  // K~, rank x rank
  Eigen::MatrixXcd modes;             // U V~, (d+1)n x rank
  Eigen::MatrixXcd adjoint_modes;     // V~^-1 U*, rank x (d+1)n
  Eigen::MatrixXcd eigvecs;           // V~ of K~ = V~ L V~^-1
  Eigen::MatrixXcd left_basis;        // U
  Eigen::MatrixXcd right_basis;       // V
  Eigen::VectorXd sigma;              // retained singular values
};

/// Steps 1-2 only: SVD truncation and the reduced operator; eigen fields
/// are left empty.
SpectralDecomposition reduced_operator(const DelayMatrixPair& pair, int rank);
SpectralDecomposition reduced_operator(const SvdFactors& svd, const Eigen::MatrixXcd& Y);

/// Full Steps 1-4.
SpectralDecomposition decompose(const DelayMatrixPair& pair, const TruncationPolicy& policy);
SpectralDecomposition decompose(const SvdFactors& svd, const Eigen::MatrixXcd& Y);

/// Mode scalings c_j and recovered per-term vector coefficients.
struct ScaledModes {
  Eigen::VectorXcd scalings;
  std::vector<Eigen::VectorXcd> coefficients;
};

/// Averaged scaling coefficients over the given snapshots z(t_tau):
/// c_j = (1/M) sum_tau (V~^-1 U* z(tau))_j lambda_j^-tau.
ScaledModes scale_modes(const SpectralDecomposition& dec,
                        const Eigen::MatrixXcd& snapshots,
                        const std::vector<int>& times);

/// v_j = (1/(d+1)) sum_k (c_j w_j)[k n..(k+1) n] lambda_j^-k.
std::vector<Eigen::VectorXcd> recover_coefficients(const SpectralDecomposition& dec,
                                                   const ScaledModes& scaled,
                                                   int n, int d);

/// sum_j c_j w_j lambda_j^t.
Eigen::VectorXcd reconstruct(const SpectralDecomposition& dec,
                             const ScaledModes& scaled, int t);

namespace detail {

/// Canonical spectral order: magnitude descending, ties by ascending phase
/// in (-pi, pi]. Returns the permutation to apply to eigenvalue indices.
std::vector<int> canonical_eigen_order(const Eigen::VectorXcd& eigenvalues);

/// Unit norm with the first significant component rotated onto the
/// positive real axis. Applied column-wise.
void canonicalize_columns(Eigen::MatrixXcd& m);

/// Eigendecomposition with canonical ordering and normalization; throws
/// "defective reduced operator" when cond(V~) exceeds 1e12.
void eigendecompose(const Eigen::MatrixXcd& op, Eigen::VectorXcd& eigenvalues,
                    Eigen::MatrixXcd& right_vectors, Eigen::MatrixXcd& inverse_vectors);

}  // namespace detail

}  // namespace dmdc
