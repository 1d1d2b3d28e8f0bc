#include "poltran/wavepacket.hpp"

#include <cmath>
#include <stdexcept>

namespace poltran {

PreparedState initialize_wavepacket(const WavepacketInit& init, const ModelParams& params) {
  params.validate();
  const KGrid grid = KGrid::modes(params);
  const long n = params.n_molecules;
  const int m = params.n_cavity_modes;

  double sigma_k = init.width_k;
  if (!(sigma_k > 0)) {
    const double vg = bare_group_velocity(init.center_k, Branch::lp, params);
    if (!(init.width_e > 0) || !(std::abs(vg) > 1e-12))
      throw std::invalid_argument("wavepacket: cannot derive width_k (zero slope at k0?)");
    sigma_k = init.width_e / (units::hbar * std::abs(vg));
  }
  if (!(init.center_k > grid.k_par.front() && init.center_k < grid.k_par.back()))
    throw std::invalid_argument("wavepacket: center_k outside the mode grid");

  const double x_c = init.center_x > 0 ? init.center_x : 0.25 * params.box_length();

  PreparedState out;
  out.amplitudes = Eigen::VectorXcd::Zero(n + m);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

  double wsum = 0, ksum = 0;
  for (int j = 0; j < m; ++j) {
    const double k = grid.k_par[j];
    const double arg = (k - init.center_k) / sigma_k;
    const double w = std::exp(-0.25 * arg * arg);
    if (w < 1e-14) continue;
    const BandPoint bp = polariton_point(k, params);
    const double sin_t = std::sin(bp.mixing_angle);
    const double cos_t = std::cos(bp.mixing_angle);
    const std::complex<double> weight = w * std::polar(1.0, -k * x_c);
    // |-,k> = -sin(Theta)|B_k> + cos(Theta)|1_k>, with site amplitudes
    // (1/sqrt(N)) e^{+i k x_n} on the bright combination.
    out.amplitudes[n + j] += weight * cos_t;
    for (long site = 0; site < n; ++site) {
      const double phi = k * params.spacing * static_cast<double>(site);
      out.amplitudes[site] += weight * (-sin_t) * inv_sqrt_n * std::polar(1.0, phi);
    }
    wsum += w * w;
    ksum += w * w * k;
  }
  const double norm = out.amplitudes.norm();
  if (!(norm > 0)) throw std::invalid_argument("wavepacket: zero norm (grid too coarse?)");
  out.amplitudes /= norm;
  out.mean_k = ksum / wsum;

  // Fraction of the continuum Gaussian weight outside the covered k window.
  const double half_step = grid.size() > 1 ? 0.5 * (grid.k_par[1] - grid.k_par[0]) : 0.0;
  const double lo = (grid.k_par.front() - half_step - init.center_k) / (std::sqrt(2.0) * sigma_k);
  const double hi = (grid.k_par.back() + half_step - init.center_k) / (std::sqrt(2.0) * sigma_k);
  out.leakage = 0.5 * (std::erfc(hi) + std::erfc(-lo));
  return out;
}

}  // namespace poltran
