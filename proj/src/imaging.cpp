#include "dmdc/imaging.hpp"

#include <stdexcept>

namespace dmdc {

PixelEnsemble pixel_profiles(const GrainImage& image, int d, bool demean) {
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("d must be even and >= 2");
  if (image.width <= d || image.height <= d)
    throw std::invalid_argument("image too small for the scan window");

  const int half = d / 2;
  PixelEnsemble pe;
  pe.width = image.width;
  pe.height = image.height;
  pe.margin = half;
  pe.ensemble.noise_sigma = 0.0;
  pe.ensemble.series.reserve(
      static_cast<std::size_t>(pe.interior_width()) * static_cast<std::size_t>(pe.interior_height()));

  for (int y = half; y < image.height - half; ++y)
    for (int x = half; x < image.width - half; ++x) {
      Eigen::MatrixXcd series(2, d + 1);
      for (int t = 0; t <= d; ++t) {
        series(0, t) = image.at(x - half + t, y);  // x scan
        series(1, t) = image.at(x, y - half + t);  // y scan
      }
      if (demean) {
        series.row(0).array() -= series.row(0).mean();
        series.row(1).array() -= series.row(1).mean();
      }
      pe.ensemble.series.push_back(std::move(series));
    }
  return pe;
}

ConnectivityGraph pixel_connectivity(const PixelEnsemble& ensemble, bool eight_neighborhood) {
  const int w = ensemble.interior_width();
  const int h = ensemble.interior_height();
  ConnectivityGraph g;
  g.node_count = w * h;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int id = y * w + x;
      if (x + 1 < w) g.edges.emplace_back(id, id + 1);
      if (y + 1 < h) g.edges.emplace_back(id, id + w);
      if (eight_neighborhood) {
        if (x + 1 < w && y + 1 < h) g.edges.emplace_back(id, id + w + 1);
        if (x > 0 && y + 1 < h) g.edges.emplace_back(id, id + w - 1);
      }
    }
  return g;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> mode_map(const FeatureModel& model,
                                                     const Eigen::MatrixXcd& Q,
                                                     const PixelEnsemble& ensemble,
                                                     int eigenvalue_index) {
  if (eigenvalue_index < 0 || eigenvalue_index >= model.rank)
    throw std::invalid_argument("eigenvalue index out of range");
  if (model.n != 2) throw std::invalid_argument("mode maps require n = 2 pixel data");

  const Eigen::RowVectorXd magnitudes = Q.row(eigenvalue_index).cwiseAbs();
  const double peak = magnitudes.maxCoeff();
  const double scale = peak > 0.0 ? 1.0 / peak : 1.0;

  Eigen::MatrixXd x_map = Eigen::MatrixXd::Zero(ensemble.height, ensemble.width);
  Eigen::MatrixXd y_map = Eigen::MatrixXd::Zero(ensemble.height, ensemble.width);
  const int count = ensemble.interior_width() * ensemble.interior_height();
  for (int id = 0; id < count; ++id) {
    const auto [x, y] = ensemble.pixel_of(id);
    x_map(y, x) = magnitudes(2 * id) * scale;
    y_map(y, x) = magnitudes(2 * id + 1) * scale;
  }
  return {x_map, y_map};
}

Eigen::MatrixXi label_map(const std::vector<int>& labels, const PixelEnsemble& ensemble) {
  const int count = ensemble.interior_width() * ensemble.interior_height();
  if (static_cast<int>(labels.size()) != count)
    throw std::invalid_argument("label count does not match interior pixel count");

  Eigen::MatrixXi map = Eigen::MatrixXi::Zero(ensemble.height, ensemble.width);
  for (int id = 0; id < count; ++id) {
    const auto [x, y] = ensemble.pixel_of(id);
    map(y, x) = labels[static_cast<std::size_t>(id)];
  }
  return map;
}

}  // namespace dmdc
