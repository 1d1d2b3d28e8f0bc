#pragma once

#include <Eigen/Dense>
#include <vector>

namespace poltran {

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double slope_stderr = 0;
  double r_squared = 0;
  int n_points = 0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct WavefrontResult {
  std::vector<double> front;  // nm, per frame; NaN where no front found
  LinearFit fit;              // front position vs time over the fit window
  bool truncated = false;     // front reached the lattice boundary
};

// Per frame, the front is the largest x_n with density >= threshold * frame
// maximum. Frames after the front reaches the last lattice site are dropped
// from the fit and flagged.
WavefrontResult track_wavefront(const std::vector<Eigen::VectorXd>& density_frames,
                                const std::vector<double>& times,
                                const std::vector<double>& x, double threshold,
                                double t_fit_begin, double t_fit_end);

}  // namespace poltran
