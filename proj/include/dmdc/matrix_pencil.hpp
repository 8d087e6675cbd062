#pragma once

#include <Eigen/Dense>

#include "dmdc/dmd.hpp"

namespace dmdc {

/// Pencil operator L~ = S^-1 U* Y V and the generalized eigenvectors of
/// the pencil (X, Y) assembled from its eigendecomposition.
struct PencilDecomposition {
  int rank = 0;
  Eigen::MatrixXcd pencil_operator;  // L~, rank x rank
  Eigen::VectorXcd eigenvalues;      // same canonical order as dmd
  Eigen::MatrixXcd right_gen_eigs;   // columns of V W~, cols x rank
  Eigen::MatrixXcd left_gen_eigs;    // rows of W~^-1 S^-1 U*, rank x rows
  Eigen::MatrixXcd eigvecs;          // W~
  Eigen::VectorXd sigma;             // retained singular values
};

PencilDecomposition pencil_decompose(const SvdFactors& svd, const Eigen::MatrixXcd& Y);
PencilDecomposition pencil_decompose(const DelayMatrixPair& pair, int rank);

/// ||L~ - S K~ S^-1||_F / max(1, ||L~||_F); near zero when both
/// decompositions consumed the same SVD factors.
double verify_similarity(const SpectralDecomposition& dmd_dec,
                         const PencilDecomposition& pencil_dec);

/// Max row-difference norm between the adjoint DMD modes and the left
/// generalized eigenvectors after pairwise eigenvalue matching and
/// canonical row normalization. Throws on eigenvalue collisions within 1e-9.
double verify_adjoint_mode_match(const SpectralDecomposition& dmd_dec,
                                 const PencilDecomposition& pencil_dec);

}  // namespace dmdc
