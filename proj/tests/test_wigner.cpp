#include <doctest.h>

#include <cmath>
#include <set>

#include "poltran/wigner.hpp"

using namespace poltran;

TEST_CASE("seed determinism") {
  const DiscretizedBath bath = discretize_bath({.lambda = 6e-3, .omega_f = 6e-3, .n_modes = 5});
  ThermalState warm{.temperature = 300.0};
  const NuclearPhaseSpace a = sample_wigner(warm, bath, 16, 42);
  const NuclearPhaseSpace b = sample_wigner(warm, bath, 16, 42);
  const NuclearPhaseSpace c = sample_wigner(warm, bath, 16, 43);
  CHECK((a.position - b.position).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.momentum - b.momentum).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.position - c.position).cwiseAbs().maxCoeff() > 0.0);
  CHECK(a.position.rows() == 5);
  CHECK(a.position.cols() == 16);
}

TEST_CASE("second moments follow the thermal Wigner widths") {
  const DiscretizedBath bath = discretize_bath({.lambda = 6e-3, .omega_f = 6e-3, .n_modes = 3});
  const long n = 200000;

  auto check_moments = [&](double temperature) {
    ThermalState t{.temperature = temperature};
    const NuclearPhaseSpace ps = sample_wigner(t, bath, n, 7);
    for (std::size_t a = 0; a < bath.size(); ++a) {
      const double w = bath.omega[a] / units::hbar;
      const double coth = 1.0 / std::tanh(0.5 * t.beta() * bath.omega[a]);
      const double var_r = 0.5 * units::hbar / w * coth;
      const double var_p = 0.5 * units::hbar * w * coth;
      const long row = static_cast<long>(a);
      CHECK(ps.position.row(row).squaredNorm() / n == doctest::Approx(var_r).epsilon(0.02));
      CHECK(ps.momentum.row(row).squaredNorm() / n == doctest::Approx(var_p).epsilon(0.02));
      CHECK(std::abs(ps.position.row(row).mean()) < 4.0 * std::sqrt(var_r / n));
      CHECK(std::abs(ps.momentum.row(row).mean()) < 4.0 * std::sqrt(var_p / n));
    }
  };
  check_moments(300.0);
  check_moments(50.0);
}

TEST_CASE("limits: zero point and equipartition") {
  const DiscretizedBath bath = discretize_bath({.lambda = 6e-3, .omega_f = 6e-3, .n_modes = 1});
  const double w = bath.omega[0] / units::hbar;
  const long n = 200000;

  // T -> 0: widths collapse to the ground-state values
  ThermalState cold{.temperature = 1e-3};
  const NuclearPhaseSpace g = sample_wigner(cold, bath, n, 3);
  CHECK(g.momentum.row(0).squaredNorm() / n ==
        doctest::Approx(0.5 * units::hbar * w).epsilon(0.02));

  // beta*hbar*w << 1: classical equipartition <P^2> = kT
  ThermalState hot{.temperature = 6e-3 / (0.01 * units::k_boltzmann)};
  const NuclearPhaseSpace h = sample_wigner(hot, bath, n, 3);
  CHECK(h.momentum.row(0).squaredNorm() / n ==
        doctest::Approx(1.0 / hot.beta()).epsilon(0.02));
}

TEST_CASE("per-trajectory seed stream") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(mix_seed(1, i));
  CHECK(seen.size() == 1000);
  CHECK(mix_seed(1, 0) != mix_seed(2, 0));
  CHECK(mix_seed(5, 7) == mix_seed(5, 7));
}
