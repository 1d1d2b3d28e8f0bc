#include "poltran/bath.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace poltran {

void BathSpec::validate() const {
  if (!(lambda >= 0)) throw std::invalid_argument("lambda must be >= 0");
  if (!(omega_f > 0)) throw std::invalid_argument("omega_f must be > 0");
  if (n_modes < 1) throw std::invalid_argument("n_modes must be >= 1");
}

double DiscretizedBath::reorganization_energy() const {
  double sum = 0;
  for (std::size_t a = 0; a < omega.size(); ++a)
    sum += coupling[a] * coupling[a] / omega[a];
  return sum;
}

DiscretizedBath discretize_bath(const BathSpec& spec) {
  spec.validate();
  DiscretizedBath bath;
  bath.omega.resize(spec.n_modes);
  bath.coupling.resize(spec.n_modes);
  const double inv = 1.0 / (spec.n_modes + 1);
  for (int a = 1; a <= spec.n_modes; ++a) {
    const double w = spec.omega_f * std::tan(0.5 * std::numbers::pi * (1.0 - a * inv));
    bath.omega[a - 1] = w;
    bath.coupling[a - 1] = std::sqrt(spec.lambda * w * inv);
  }
  return bath;
}

}  // namespace poltran
