#pragma once

#include <vector>

#include "poltran/units.hpp"

namespace poltran {

// Cavity + exciton ensemble parameters. The light-matter coupling is stored
// as the collective value sqrt(N)*g_c; only that combination enters the
// polariton eigenproblem.
struct ModelParams {
  double exciton_energy = 1.96;       // eV, hbar*omega_0
  double cavity_energy = 1.90;        // eV, hbar*omega_c at k_par = 0
  double collective_coupling = 0.120; // eV, sqrt(N) g_c
  long n_molecules = 2000;            // N
  int n_cavity_modes = 57;            // M, odd
  double spacing = 16.0;              // nm, intermolecular distance L

  // k_perp = omega_c / c, reconstructed from the stored energy.
  double k_perp() const { return cavity_energy / (units::hbar * units::c_light); }

  double box_length() const { return spacing * static_cast<double>(n_molecules); }

  // Throws std::invalid_argument on violated invariants.
  void validate() const;
};

// In-plane wavevector grid. Mode grids carry the integer indices
// k in [-(M-1)/2, (M-1)/2] with k_par = 2*pi*k/(N*L); dense grids are
// arbitrary strictly increasing k_par lists used for theory evaluation.
struct KGrid {
  std::vector<int> indices;    // empty for dense grids
  std::vector<double> k_par;   // 1/nm, strictly increasing

  bool is_mode_grid() const { return !indices.empty(); }
  std::size_t size() const { return k_par.size(); }

  static KGrid modes(const ModelParams& params);
  static KGrid dense(double k_min, double k_max, int n_points);
};

enum class Branch { up, lp };

// Polariton eigenstructure at one in-plane wavevector.
struct BandPoint {
  double k_par = 0;         // 1/nm
  double photon_energy = 0; // eV, hbar*omega_k
  double coupling = 0;      // eV, collective sqrt(N)*hbar*g_k
  double energy_up = 0;     // eV
  double energy_lp = 0;     // eV
  double mixing_angle = 0;  // rad, Theta_k in [0, pi/2)
  double hopfield_lp = 0;   // |C_k|^2 = sin^2(Theta_k), matter fraction of LP
  double zeta_up_sq = 0;    // cos^2(Theta_k), matter fraction of UP
  double dark_gap = 0;      // eV, hbar*(omega_0 - omega_{-k}) > 0
};

// Fabry-Perot dispersion hbar*omega_k = hbar*c*sqrt(k_perp^2 + k_par^2).
double cavity_dispersion(double k_par, const ModelParams& params);

// Collective coupling sqrt(N)*hbar*g_k = sqrt(N)g_c*sqrt(omega_k/omega_c)*cos(theta),
// which reduces to sqrt(N)g_c*sqrt(omega_c/omega_k).
double coupling_at_k(double k_par, const ModelParams& params);

BandPoint polariton_point(double k_par, const ModelParams& params);

// Analytic d(omega_{+-k})/dk_par in nm/fs, including the k-dependence of g_k.
double bare_group_velocity(double k_par, Branch branch, const ModelParams& params);

// Smallest k_par >= 0 with E_LP(k_par) = energy, solved by bisection on
// [0, k_max]. Throws if the energy is outside the attainable LP range.
double lp_wavevector_for_energy(double energy, const ModelParams& params, double k_max);

}  // namespace poltran
