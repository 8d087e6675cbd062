#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace dmdc {

using Complex = std::complex<double>;

/// Ground-truth generator: x(t) = sum_j v_j * lambda_j^t.
struct DampedSinusoidModel {
  Eigen::MatrixXcd modes;        // n x R, column j holds v_j
  Eigen::VectorXcd frequencies;  // R complex frequencies lambda_j

  int term_count() const { return static_cast<int>(frequencies.size()); }
  int dimension() const { return static_cast<int>(modes.rows()); }
};

/// N sequences of n-dimensional complex samples, all of equal length.
/// Each series is stored as an n x (T+1) matrix with one column per sample.
struct SeriesEnsemble {
  std::vector<Eigen::MatrixXcd> series;
  std::vector<int> labels;  // optional ground-truth partition per series (1-based)
  double noise_sigma = 0.0;
  // Optional ground truth: distinct complex frequencies exhibited by each
  // partition, indexed by label-1. Filled by the synthetic generators.
  std::vector<std::vector<Complex>> partition_frequencies;

  int series_count() const { return static_cast<int>(series.size()); }
  int dimension() const { return series.empty() ? 0 : static_cast<int>(series[0].rows()); }
  int sample_count() const { return series.empty() ? 0 : static_cast<int>(series[0].cols()); }
};

/// Grayscale image with brightness in [0,1], stored row-major as
/// pixels(y, x). Optional per-pixel ground-truth region index.
struct GrainImage {
  int width = 0;
  int height = 0;
  Eigen::MatrixXd pixels;        // height x width
  Eigen::MatrixXi region_labels; // height x width, -1 when absent
  bool has_labels = false;

  double at(int x, int y) const { return pixels(y, x); }
};

/// One region of a synthetic lattice image: a polygon with an oriented
/// two-grating pattern of the given period and amplitude.
struct LatticeRegion {
  std::vector<Eigen::Vector2d> polygon;  // vertices in pixel coordinates
  double orientation_rad = 0.0;
  double period_px = 19.0;
  double amplitude = 0.8;
};

/// Evaluates the model at t = 0..t_count-1 and adds seeded Gaussian noise.
/// With real_part_only the real part of x(t) is taken before noise is added
/// (and the noise stays real); otherwise the noise is applied independently
/// to real and imaginary parts. Returns an n x t_count matrix.
/// Random stream: std::mt19937_64 + std::normal_distribution<double>.
Eigen::MatrixXcd synthesize(const DampedSinusoidModel& model, int t_count,
                            double noise_sigma, std::uint64_t seed,
                            bool real_part_only = false);

/// The 23-series toy ensemble: series 1-6 at omega_A=1.0, 7-12 at
/// omega_B=1.7, 13-23 a pair (omega_C=0.8, omega_D=1.5); coefficients
/// uniform on the annulus 1 <= |z| <= 2 (uniform phase, uniform modulus),
/// measurements Re{x(t)} + N(0, sigma) for t = 0..19.
SeriesEnsemble make_toy_ensemble(std::uint64_t seed, double noise_sigma = 0.1);

/// Synthetic lattice image: each region paints a primary grating along its
/// orientation (period p) plus a perpendicular grating of period 1.5p with
/// a second harmonic, giving the two-rows-per-period profile of a
/// hexagonal-like lattice. Regions must tile the image exactly.
GrainImage make_lattice_image(int width, int height,
                              const std::vector<LatticeRegion>& regions,
                              double noise_sigma, std::uint64_t seed);

/// Factor matrices (A, B) with A of size (d+1)n x R and B of size M x R
/// such that the noise-free delay matrix X built from the same model over
/// the given snapshot times satisfies X = A * B^T.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> esprit_factors(
    const DampedSinusoidModel& model, int d, const std::vector<int>& times);

}  // namespace dmdc
