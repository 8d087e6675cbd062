#include "dmdc/dmd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dmdc {

int select_rank(const Eigen::VectorXd& singular_values, const TruncationPolicy& policy) {
  const int count = static_cast<int>(singular_values.size());
  if (count == 0) throw std::invalid_argument("empty singular value list");
  if (singular_values(0) <= 0.0) throw std::runtime_error("zero data");

  switch (policy.kind) {
    case TruncationPolicy::Kind::fixed_rank: {
      if (policy.rank < 1) throw std::invalid_argument("fixed rank must be >= 1");
      int positive = 0;
      for (int i = 0; i < count; ++i)
        if (singular_values(i) > 0.0) ++positive;
      return std::min(policy.rank, positive);
    }
    case TruncationPolicy::Kind::energy: {
      const double total = singular_values.squaredNorm();
      double partial = 0.0;
      for (int r = 1; r <= count; ++r) {
        partial += singular_values(r - 1) * singular_values(r - 1);
        if (partial >= policy.threshold * total) return r;
      }
      return count;
    }
    case TruncationPolicy::Kind::gap: {
      if (count == 1) return 1;
      int best = 1;
      double best_ratio = -1.0;
      for (int r = 1; r < count; ++r) {
        if (singular_values(r - 1) <= policy.threshold * singular_values(0)) break;
        const double next = singular_values(r);
        const double ratio = next > 0.0 ? singular_values(r - 1) / next
                                        : std::numeric_limits<double>::infinity();
        if (ratio > best_ratio) {
          best_ratio = ratio;
          best = r;
        }
      }
      return best;
    }
  }
  throw std::logic_error("unreachable");
}

SvdFactors truncated_svd(const Eigen::MatrixXcd& X, int rank) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (rank < 1 || rank > sv.size())
    throw std::invalid_argument("rank out of range");
  int numerical_rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-14 * sv(0)) ++numerical_rank;
  if (rank > numerical_rank)
    throw std::runtime_error("truncation beyond numerical rank");

  SvdFactors f;
  f.U = svd.matrixU().leftCols(rank);
  f.V = svd.matrixV().leftCols(rank);
  f.sigma = sv.head(rank);
  f.all_singular_values = sv;
  return f;
}

SpectralDecomposition reduced_operator(const SvdFactors& svd, const Eigen::MatrixXcd& Y) {
  SpectralDecomposition dec;
  dec.rank = static_cast<int>(svd.sigma.size());
  dec.singular_values = svd.all_singular_values;
  dec.left_basis = svd.U;
  dec.right_basis = svd.V;
  dec.sigma = svd.sigma;
  dec.reduced_operator = svd.U.adjoint() * Y * svd.V * svd.sigma.cwiseInverse().asDiagonal();
  return dec;
}

SpectralDecomposition reduced_operator(const DelayMatrixPair& pair, int rank) {
  return reduced_operator(truncated_svd(pair.X, rank), pair.Y);
}

namespace detail {

std::vector<int> canonical_eigen_order(const Eigen::VectorXcd& eigenvalues) {
  std::vector<int> order(static_cast<std::size_t>(eigenvalues.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double ma = std::abs(eigenvalues(a)), mb = std::abs(eigenvalues(b));
    if (ma != mb) return ma > mb;
    return std::arg(eigenvalues(a)) < std::arg(eigenvalues(b));
  });
  return order;
}

void canonicalize_columns(Eigen::MatrixXcd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double norm = m.col(j).norm();
    if (norm == 0.0) continue;
    m.col(j) /= norm;
    const double tol = 1e-12 * m.col(j).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const std::complex<double> lead = m(i, j);
      if (std::abs(lead) > tol) {
        m.col(j) *= std::abs(lead) / lead;
        break;
      }
    }
  }
}

void eigendecompose(const Eigen::MatrixXcd& op, Eigen::VectorXcd& eigenvalues,
                    Eigen::MatrixXcd& right_vectors, Eigen::MatrixXcd& inverse_vectors) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(op);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");

  const auto order = canonical_eigen_order(solver.eigenvalues());
  const int r = static_cast<int>(order.size());
  eigenvalues.resize(r);
  right_vectors.resize(r, r);
  for (int j = 0; j < r; ++j) {
    eigenvalues(j) = solver.eigenvalues()(order[static_cast<std::size_t>(j)]);
    right_vectors.col(j) = solver.eigenvectors().col(order[static_cast<std::size_t>(j)]);
  }
  canonicalize_columns(right_vectors);

  Eigen::JacobiSVD<Eigen::MatrixXcd> cond_svd(right_vectors);
  const Eigen::VectorXd& sv = cond_svd.singularValues();
  if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > 1e12)
    throw std::runtime_error("defective reduced operator");

  inverse_vectors = right_vectors.inverse();
}

}  // namespace detail

SpectralDecomposition decompose(const SvdFactors& svd, const Eigen::MatrixXcd& Y) {
  SpectralDecomposition dec = reduced_operator(svd, Y);
  Eigen::MatrixXcd inv;
  detail::eigendecompose(dec.reduced_operator, dec.eigenvalues, dec.eigvecs, inv);
  dec.modes = dec.left_basis * dec.eigvecs;
  dec.adjoint_modes = inv * dec.left_basis.adjoint();
  return dec;
}

SpectralDecomposition decompose(const DelayMatrixPair& pair, const TruncationPolicy& policy) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pair.X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int rank = select_rank(svd.singularValues(), policy);
  SvdFactors f;
  f.U = svd.matrixU().leftCols(rank);
  f.V = svd.matrixV().leftCols(rank);
  f.sigma = svd.singularValues().head(rank);
  f.all_singular_values = svd.singularValues();
  return decompose(f, pair.Y);
}

ScaledModes scale_modes(const SpectralDecomposition& dec,
                        const Eigen::MatrixXcd& snapshots,
                        const std::vector<int>& times) {
  if (snapshots.cols() == 0) throw std::invalid_argument("no snapshots");
  if (static_cast<Eigen::Index>(times.size()) != snapshots.cols())
    throw std::invalid_argument("times/snapshots mismatch");
  if (dec.adjoint_modes.size() == 0)
    throw std::invalid_argument("decomposition has no eigen data");

  const Eigen::MatrixXcd projected = dec.adjoint_modes * snapshots;
  const int M = static_cast<int>(snapshots.cols());
  ScaledModes scaled;
  scaled.scalings = Eigen::VectorXcd::Zero(dec.rank);
  for (int j = 0; j < dec.rank; ++j) {
    const std::complex<double> lambda = dec.eigenvalues(j);
    for (int m = 0; m < M; ++m) {
      const int t = times[static_cast<std::size_t>(m)];
      if (t != 0 && std::abs(lambda) < 1e-12)
        throw std::runtime_error("zero eigenvalue cannot be inverted");
      scaled.scalings(j) += projected(j, m) * std::pow(lambda, static_cast<double>(-t));
    }
    scaled.scalings(j) /= static_cast<double>(M);
  }
  return scaled;
}

std::vector<Eigen::VectorXcd> recover_coefficients(const SpectralDecomposition& dec,
                                                   const ScaledModes& scaled,
                                                   int n, int d) {
  if (dec.modes.rows() != static_cast<Eigen::Index>((d + 1) * n))
    throw std::invalid_argument("mode length does not match (d+1)*n");

  std::vector<Eigen::VectorXcd> coefficients;
  coefficients.reserve(static_cast<std::size_t>(dec.rank));
  for (int j = 0; j < dec.rank; ++j) {
    const std::complex<double> lambda = dec.eigenvalues(j);
    if (d > 0 && std::abs(lambda) < 1e-12)
      throw std::runtime_error("zero eigenvalue cannot be inverted");
    const Eigen::VectorXcd scaled_mode = scaled.scalings(j) * dec.modes.col(j);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    for (int k = 0; k <= d; ++k)
      v += scaled_mode.segment(k * n, n) * std::pow(lambda, static_cast<double>(-k));
    coefficients.push_back(v / static_cast<double>(d + 1));
  }
  return coefficients;
}

Eigen::VectorXcd reconstruct(const SpectralDecomposition& dec,
                             const ScaledModes& scaled, int t) {
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(dec.modes.rows());
  for (int j = 0; j < dec.rank; ++j)
    z += scaled.scalings(j) * dec.modes.col(j) *
         std::pow(dec.eigenvalues(j), static_cast<double>(t));
  return z;
}

}  // namespace dmdc
