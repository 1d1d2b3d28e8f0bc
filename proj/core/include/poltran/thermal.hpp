#pragma once

#include <cmath>
#include <stdexcept>

#include "poltran/units.hpp"

namespace poltran {

struct ThermalState {
  double temperature = 300.0;  // K

  double beta() const { return 1.0 / (units::k_boltzmann * temperature); }

  void validate() const {
    if (!(temperature > 0)) throw std::invalid_argument("temperature must be > 0");
  }
};

// Bose-Einstein occupation 1/(exp(beta*E) - 1) for E = hbar*omega_alpha in eV.
// Written in terms of exp(-beta*E) so the low-temperature tail underflows
// gracefully instead of overflowing.
inline double bose_einstein(double energy, const ThermalState& thermal) {
  if (!(energy > 0)) throw std::domain_error("bose_einstein: energy must be > 0");
  const double x = std::exp(-thermal.beta() * energy);
  return x / (1.0 - x);
}

}  // namespace poltran
