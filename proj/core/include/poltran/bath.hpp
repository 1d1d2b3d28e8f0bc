#pragma once

#include <vector>

namespace poltran {

// Drude-Lorentz spectral density J(w) = 2*lambda*w_f*w / (w^2 + w_f^2),
// discretized with equal weight in reorganization energy.
struct BathSpec {
  double lambda = 6e-3;   // eV, reorganization energy
  double omega_f = 6e-3;  // eV, characteristic frequency
  int n_modes = 35;       // N_b

  void validate() const;  // throws std::invalid_argument
};

struct DiscretizedBath {
  std::vector<double> omega;     // eV, strictly decreasing
  std::vector<double> coupling;  // eV, c_alpha with c^2/omega an energy

  std::size_t size() const { return omega.size(); }
  // Sum of c^2/omega; equals lambda*N_b/(N_b+1) by construction.
  double reorganization_energy() const;
};

// omega_a = omega_f * tan(pi/2 * (1 - a/(N_b+1))), c_a = sqrt(lambda*omega_a/(N_b+1)),
// a = 1..N_b. Each mode carries reorganization weight lambda/(N_b+1).
DiscretizedBath discretize_bath(const BathSpec& spec);

}  // namespace poltran
