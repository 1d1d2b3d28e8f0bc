#include "poltran/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace poltran {

void ModelParams::validate() const {
  if (!(exciton_energy > 0)) throw std::invalid_argument("exciton_energy must be > 0");
  if (!(cavity_energy > 0)) throw std::invalid_argument("cavity_energy must be > 0");
  if (!(collective_coupling >= 0)) throw std::invalid_argument("collective_coupling must be >= 0");
  if (n_cavity_modes < 1 || n_cavity_modes % 2 == 0)
    throw std::invalid_argument("n_cavity_modes must be odd and >= 1");
  if (n_molecules < n_cavity_modes)
    throw std::invalid_argument("n_molecules must be >= n_cavity_modes");
  if (!(spacing > 0)) throw std::invalid_argument("spacing must be > 0");
  if (!(k_perp() > 0)) throw std::invalid_argument("k_perp must be > 0");
}

KGrid KGrid::modes(const ModelParams& params) {
  params.validate();
  KGrid grid;
  const int half = (params.n_cavity_modes - 1) / 2;
  const double dk = 2.0 * std::numbers::pi / params.box_length();
  grid.indices.reserve(params.n_cavity_modes);
  grid.k_par.reserve(params.n_cavity_modes);
  for (int k = -half; k <= half; ++k) {
    grid.indices.push_back(k);
    grid.k_par.push_back(dk * k);
  }
  return grid;
}

KGrid KGrid::dense(double k_min, double k_max, int n_points) {
  if (n_points < 2 || !(k_max > k_min))
    throw std::invalid_argument("dense grid needs k_max > k_min and >= 2 points");
  KGrid grid;
  grid.k_par.resize(n_points);
  const double dk = (k_max - k_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) grid.k_par[i] = k_min + dk * i;
  return grid;
}

double cavity_dispersion(double k_par, const ModelParams& params) {
  const double hck = units::hbar * units::c_light * k_par;
  return std::hypot(params.cavity_energy, hck);
}

double coupling_at_k(double k_par, const ModelParams& params) {
  // sqrt(w_k/w_c)*cos(theta) with cos(theta) = k_perp/|k| collapses to
  // sqrt(w_c/w_k).
  const double ek = cavity_dispersion(k_par, params);
  return params.collective_coupling * std::sqrt(params.cavity_energy / ek);
}

BandPoint polariton_point(double k_par, const ModelParams& params) {
  BandPoint p;
  p.k_par = k_par;
  p.photon_energy = cavity_dispersion(k_par, params);
  p.coupling = coupling_at_k(k_par, params);
  const double detuning = p.photon_energy - params.exciton_energy;
  const double splitting = std::hypot(detuning, 2.0 * p.coupling);
  const double mean = 0.5 * (p.photon_energy + params.exciton_energy);
  p.energy_up = mean + 0.5 * splitting;
  p.energy_lp = mean - 0.5 * splitting;
  // Theta in [0, pi/2): 2*Theta measured from the positive (w_0 - w_k) axis
  // keeps sin^2(Theta) equal to the closed-form matter fraction of the LP.
  p.mixing_angle = 0.5 * std::atan2(2.0 * p.coupling, -detuning);
  p.hopfield_lp = splitting > 0 ? 0.5 * (1.0 + detuning / splitting) : 0.5;
  p.zeta_up_sq = 1.0 - p.hopfield_lp;
  p.dark_gap = params.exciton_energy - p.energy_lp;
  return p;
}

double bare_group_velocity(double k_par, Branch branch, const ModelParams& params) {
  const double ek = cavity_dispersion(k_par, params);
  const double hc = units::hbar * units::c_light;
  const double dek = hc * hc * k_par / ek;  // dE_k/dk_par, eV*nm
  const double detuning = ek - params.exciton_energy;
  const double g = coupling_at_k(k_par, params);
  const double splitting = std::hypot(detuning, 2.0 * g);
  // d(splitting)/dk = [detuning*dE_k/dk + 4g*dg/dk]/(2s), dg/dk = -g*dE_k/dk/(2E_k)
  const double dsplit = splitting > 0
      ? (detuning * dek - 2.0 * g * g * dek / ek) / splitting
      : 0.0;
  const double sign = branch == Branch::up ? 1.0 : -1.0;
  const double denergy = 0.5 * (dek + sign * dsplit);  // eV*nm
  return denergy / units::hbar;                        // nm/fs
}

double lp_wavevector_for_energy(double energy, const ModelParams& params, double k_max) {
  const double e_lo = polariton_point(0.0, params).energy_lp;
  const double e_hi = polariton_point(k_max, params).energy_lp;
  if (!(energy >= e_lo && energy <= e_hi))
    throw std::invalid_argument("LP energy outside attainable range on [0, k_max]");
  double lo = 0.0, hi = k_max;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (polariton_point(mid, params).energy_lp < energy)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace poltran
