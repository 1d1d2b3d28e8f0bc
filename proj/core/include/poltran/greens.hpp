#pragma once

#include <vector>

#include "poltran/bath.hpp"
#include "poltran/model.hpp"
#include "poltran/thermal.hpp"

namespace poltran {

// Controls the evaluation of the first-order (Fan-Migdal) self-energy.
// dark_only collapses the k' sum to the N-M degenerate dark states at the
// exciton energy with the (N-M)/N -> 1 cancellation applied; the full sum
// keeps explicit 1/N weights over the mode grid and needs an integer-k grid.
struct SelfEnergyConfig {
  double eta = 1e-3;          // eV, Lorentzian broadening
  bool dark_only = true;
  bool include_up = true;     // branches entering the full k' sum
  bool include_lp = true;
  bool include_dark = true;
  bool self_consistent = false;  // fixed-point on E = hbar*w + ReSigma(E)
  double sc_damping = 0.5;
  double sc_tolerance = 1e-9;    // eV
  int sc_max_iterations = 200;
};

struct RenormalizedBandPoint {
  BandPoint base;
  double correction_up = 0;   // eV, Re Sigma on shell
  double correction_lp = 0;
  double energy_up = 0;       // eV, E^(2)
  double energy_lp = 0;
  double linewidth_up = 0;    // eV, Im Sigma (diagnostic only)
  double linewidth_lp = 0;
  double vg_bare_up = 0;      // nm/fs, analytic
  double vg_bare_lp = 0;
  double vg_up = 0;           // nm/fs, grid derivative of E^(2)
  double vg_lp = 0;
};

struct TastParams {
  double g = 3.0;  // dimensionless fit parameter
};

// Real part of the polarizability kernel,
//   Re[(1+n)/(E_mu - E_nu - E_ph + i*eta) + n/(E_mu - E_nu + E_ph + i*eta)],
// with all arguments as energies in eV. Result in 1/eV.
double polarizability(double e_mu, double e_nu, double e_phonon,
                      const ThermalState& thermal, double eta);

// Imaginary counterpart (Lorentzian), feeding the linewidth diagnostic.
double polarizability_imag(double e_mu, double e_nu, double e_phonon,
                           const ThermalState& thermal, double eta);

// Dark-state-only LP kernel as printed in closed form: only the
// (E_ph - dark_gap) denominator is eta-regularized.
double dark_polarizability_lp(const BandPoint& point, double e_phonon,
                              const ThermalState& thermal, double eta);

// Band energies with the first-order phonon correction at every grid point.
// Group-velocity fields are left to renormalized_vg.
std::vector<RenormalizedBandPoint> renormalized_band(
    const KGrid& grid, const ModelParams& params, const DiscretizedBath& bath,
    const ThermalState& thermal, const SelfEnergyConfig& cfg);

// Fills vg_bare_* analytically and vg_* from central differences of E^(2)
// on the (uniformly spaced, sorted) curve; one-sided at the endpoints.
void renormalized_vg(std::vector<RenormalizedBandPoint>& curve,
                     const ModelParams& params);

// TAST comparison curve: v / (1 + G * exp(-beta * dark_gap)).
double tast_vg(double vg_bare, double dark_gap, const ThermalState& thermal,
               const TastParams& tast);

// Renormalized LP group velocity at one target wavevector, evaluated on a
// small local dense stencil around k0 (spacing dk).
double lp_vg_at(double k0, const ModelParams& params, const DiscretizedBath& bath,
                const ThermalState& thermal, const SelfEnergyConfig& cfg,
                double dk = 1e-5);

}  // namespace poltran
