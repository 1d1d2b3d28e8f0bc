#include "poltran/wavefront.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace poltran {

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit: need >= 2 matching points");
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0)) throw std::invalid_argument("linear_fit: degenerate abscissa");
  LinearFit fit;
  fit.n_points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double ss_res = syy - fit.slope * sxy;
  fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  fit.slope_stderr = n > 2 ? std::sqrt(std::max(0.0, ss_res / (n - 2)) / sxx) : 0.0;
  return fit;
}

WavefrontResult track_wavefront(const std::vector<Eigen::VectorXd>& density_frames,
                                const std::vector<double>& times,
                                const std::vector<double>& x, double threshold,
                                double t_fit_begin, double t_fit_end) {
  if (density_frames.empty() || density_frames.size() != times.size())
    throw std::invalid_argument("track_wavefront: empty or mismatched series");
  if (!(threshold > 0 && threshold < 1))
    throw std::invalid_argument("track_wavefront: threshold must be in (0,1)");
  const long n = density_frames.front().size();
  if (static_cast<long>(x.size()) != n)
    throw std::invalid_argument("track_wavefront: lattice size mismatch");

  WavefrontResult out;
  out.front.resize(times.size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<char> at_boundary(times.size(), 0);
  for (std::size_t f = 0; f < times.size(); ++f) {
    const Eigen::VectorXd& rho = density_frames[f];
    const double cut = threshold * rho.maxCoeff();
    for (long i = n - 1; i >= 0; --i) {
      if (rho[i] >= cut) {
        out.front[f] = x[static_cast<std::size_t>(i)];
        at_boundary[f] = (i == n - 1);
        break;
      }
    }
  }

  std::vector<double> ft, fx;
  for (std::size_t f = 0; f < times.size(); ++f) {
    if (times[f] < t_fit_begin || times[f] > t_fit_end) continue;
    if (std::isnan(out.front[f])) continue;
    if (at_boundary[f]) {
      out.truncated = true;
      break;  // fit window truncated once the front exits the lattice
    }
    ft.push_back(times[f]);
    fx.push_back(out.front[f]);
  }
  if (ft.size() < 2)
    throw std::runtime_error("track_wavefront: fewer than 2 usable frames in fit window");
  out.fit = linear_fit(ft, fx);
  return out;
}

}  // namespace poltran
