#include "dmdc/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dmdc {

Eigen::MatrixXcd synthesize(const DampedSinusoidModel& model, int t_count,
                            double noise_sigma, std::uint64_t seed,
                            bool real_part_only) {
  if (model.term_count() == 0) throw std::invalid_argument("empty model");
  if (t_count < 1) throw std::invalid_argument("t_count must be >= 1");
  if (noise_sigma < 0) throw std::invalid_argument("noise_sigma must be >= 0");

  const int n = model.dimension();
  const int R = model.term_count();
  Eigen::MatrixXcd out(n, t_count);
  Eigen::VectorXcd powers = Eigen::VectorXcd::Ones(R);
  for (int t = 0; t < t_count; ++t) {
    out.col(t) = model.modes * powers;
    powers.array() *= model.frequencies.array();
  }
  if (real_part_only) out = out.real().cast<Complex>();

  if (noise_sigma > 0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, noise_sigma);
    for (int t = 0; t < t_count; ++t)
      for (int i = 0; i < n; ++i) {
        const double re = gauss(rng);
        const double im = real_part_only ? 0.0 : gauss(rng);
        out(i, t) += Complex(re, im);
      }
  }
  return out;
}

SeriesEnsemble make_toy_ensemble(std::uint64_t seed, double noise_sigma) {
  constexpr double omega_a = 1.0, omega_b = 1.7, omega_c = 0.8, omega_d = 1.5;
  constexpr int t_count = 20;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> modulus(1.0, 2.0);
  auto annulus = [&] {
    const double r = modulus(rng);
    const double p = phase(rng);
    return Complex(r * std::cos(p), r * std::sin(p));
  };

  SeriesEnsemble ens;
  ens.noise_sigma = noise_sigma;
  ens.partition_frequencies = {
      {std::exp(Complex(0, omega_a)), std::exp(Complex(0, -omega_a))},
      {std::exp(Complex(0, omega_b)), std::exp(Complex(0, -omega_b))},
      {std::exp(Complex(0, omega_c)), std::exp(Complex(0, -omega_c)),
       std::exp(Complex(0, omega_d)), std::exp(Complex(0, -omega_d))}};

  // Coefficients and noise seeds are drawn from one stream so that a single
  // seed reproduces the whole ensemble.
  for (int i = 0; i < 23; ++i) {
    DampedSinusoidModel model;
    int label;
    if (i < 6) {
      model.modes = Eigen::MatrixXcd::Constant(1, 1, annulus());
      model.frequencies = Eigen::VectorXcd::Constant(1, std::exp(Complex(0, omega_a)));
      label = 1;
    } else if (i < 12) {
      model.modes = Eigen::MatrixXcd::Constant(1, 1, annulus());
      model.frequencies = Eigen::VectorXcd::Constant(1, std::exp(Complex(0, omega_b)));
      label = 2;
    } else {
      model.modes.resize(1, 2);
      model.modes(0, 0) = annulus();
      model.modes(0, 1) = annulus();
      model.frequencies.resize(2);
      model.frequencies << std::exp(Complex(0, omega_c)), std::exp(Complex(0, omega_d));
      label = 3;
    }
    ens.series.push_back(
        synthesize(model, t_count, noise_sigma, rng(), /*real_part_only=*/true));
    ens.labels.push_back(label);
  }
  return ens;
}

namespace {

// Even-odd rule point-in-polygon test.
bool point_in_polygon(const std::vector<Eigen::Vector2d>& poly, double x, double y) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.y() > y) != (b.y() > y)) {
      const double t = (y - a.y()) / (b.y() - a.y());
      if (x < a.x() + t * (b.x() - a.x())) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

GrainImage make_lattice_image(int width, int height,
                              const std::vector<LatticeRegion>& regions,
                              double noise_sigma, std::uint64_t seed) {
  if (width < 1 || height < 1) throw std::invalid_argument("invalid image size");
  if (regions.empty()) throw std::invalid_argument("invalid region spec");
  for (const auto& r : regions) {
    if (r.period_px < 4.0) throw std::invalid_argument("period must be >= 4 px");
    if (r.polygon.size() < 3) throw std::invalid_argument("invalid region spec");
  }

  GrainImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(height, width);
  img.region_labels = Eigen::MatrixXi::Constant(height, width, -1);
  img.has_labels = true;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, noise_sigma > 0 ? noise_sigma : 1.0);
  constexpr double two_pi = 2.0 * std::numbers::pi;

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      // Pixel centers keep boundary pixels off polygon edges.
      const double cx = x + 0.5, cy = y + 0.5;
      int region = -1;
      for (std::size_t r = 0; r < regions.size(); ++r) {
        if (point_in_polygon(regions[r].polygon, cx, cy)) {
          if (region >= 0) throw std::invalid_argument("invalid region spec");
          region = static_cast<int>(r);
        }
      }
      if (region < 0) throw std::invalid_argument("invalid region spec");
      img.region_labels(y, x) = region + 1;

      const auto& reg = regions[static_cast<std::size_t>(region)];
      const double c = std::cos(reg.orientation_rad);
      const double s = std::sin(reg.orientation_rad);
      const double s1 = c * cx + s * cy;    // along the lattice rows
      const double s2 = -s * cx + c * cy;   // across the rows
      // Primary grating (period p) plus the across-row grating of period
      // 1.5p with its second harmonic: two atom rows per across-row period.
      const double g = std::cos(two_pi * s1 / reg.period_px) +
                       0.5 * std::cos(two_pi * s2 / (1.5 * reg.period_px)) +
                       0.5 * std::cos(2.0 * two_pi * s2 / (1.5 * reg.period_px));
      double v = 0.5 + 0.25 * reg.amplitude * g;
      if (noise_sigma > 0) v += gauss(rng);
      img.pixels(y, x) = std::clamp(v, 0.0, 1.0);
    }
  }
  return img;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> esprit_factors(
    const DampedSinusoidModel& model, int d, const std::vector<int>& times) {
  if (model.term_count() == 0) throw std::invalid_argument("empty model");
  if (d < 0) throw std::invalid_argument("d must be >= 0");

  const int n = model.dimension();
  const int R = model.term_count();
  const int M = static_cast<int>(times.size());

  Eigen::MatrixXcd A((d + 1) * n, R);
  Eigen::MatrixXcd B(M, R);
  for (int j = 0; j < R; ++j) {
    const double norm = model.modes.col(j).norm();
    if (norm == 0.0) throw std::invalid_argument("degenerate mode");
    const Eigen::VectorXcd unit = model.modes.col(j) / norm;
    const Complex lambda = model.frequencies(j);
    Complex pw(1.0, 0.0);
    for (int k = 0; k <= d; ++k) {
      A.block(k * n, j, n, 1) = unit * pw;
      pw *= lambda;
    }
    for (int m = 0; m < M; ++m)
      B(m, j) = norm * std::pow(lambda, static_cast<double>(times[static_cast<std::size_t>(m)]));
  }
  return {A, B};
}

}  // namespace dmdc
