#include "poltran/wigner.hpp"

#include <cmath>
#include <random>

namespace poltran {

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

NuclearPhaseSpace sample_wigner(const ThermalState& thermal, const DiscretizedBath& bath,
                                long n_molecules, std::uint64_t seed) {
  thermal.validate();
  const long nb = static_cast<long>(bath.size());
  NuclearPhaseSpace ps;
  ps.position.resize(nb, n_molecules);
  ps.momentum.resize(nb, n_molecules);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (long a = 0; a < nb; ++a) {
    const double w = bath.omega[static_cast<std::size_t>(a)] / units::hbar;  // 1/fs
    const double coth = 1.0 / std::tanh(0.5 * thermal.beta() * bath.omega[static_cast<std::size_t>(a)]);
    const double sigma_r = std::sqrt(0.5 * units::hbar / w * coth);
    const double sigma_p = std::sqrt(0.5 * units::hbar * w * coth);
    for (long n = 0; n < n_molecules; ++n) {
      ps.position(a, n) = sigma_r * gauss(rng);
      ps.momentum(a, n) = sigma_p * gauss(rng);
    }
  }
  return ps;
}

}  // namespace poltran
