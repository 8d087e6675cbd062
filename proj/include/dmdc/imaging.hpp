#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "dmdc/clustering.hpp"
#include "dmdc/features.hpp"
#include "dmdc/signal_model.hpp"

namespace dmdc {

/// Per-pixel two-direction scan ensemble (n = 2: x-scan, y-scan). Only
/// interior pixels with a full window of d+1 samples are included; series
/// ids walk the interior row by row.
struct PixelEnsemble {
  SeriesEnsemble ensemble;
  int width = 0;
  int height = 0;
  int margin = 0;  // d/2 border exclusion

  int interior_width() const { return width - 2 * margin; }
  int interior_height() const { return height - 2 * margin; }

  /// (x, y) interior pixel -> series id.
  int series_index(int x, int y) const {
    return (y - margin) * interior_width() + (x - margin);
  }
  /// Series id -> (x, y) pixel coordinates.
  std::pair<int, int> pixel_of(int series_id) const {
    return {margin + series_id % interior_width(), margin + series_id / interior_width()};
  }
};

/// Centered x- and y-scan windows of d+1 samples around every interior
/// pixel. When demean is set each scan window is mean-subtracted to
/// suppress the constant background mode.
PixelEnsemble pixel_profiles(const GrainImage& image, int d, bool demean = true);

/// Grid adjacency between interior pixels (Manhattan distance 1; optionally
/// the 8-neighborhood).
ConnectivityGraph pixel_connectivity(const PixelEnsemble& ensemble,
                                     bool eight_neighborhood = false);

/// Renders |Q| entries of one eigenvector row back into image space, split
/// into the x- and y-direction components and normalized by the row
/// maximum. Border pixels are 0.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> mode_map(const FeatureModel& model,
                                                     const Eigen::MatrixXcd& Q,
                                                     const PixelEnsemble& ensemble,
                                                     int eigenvalue_index);

/// Per-pixel cluster label image; border pixels get label 0.
Eigen::MatrixXi label_map(const std::vector<int>& labels, const PixelEnsemble& ensemble);

}  // namespace dmdc
