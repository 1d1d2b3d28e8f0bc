#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "poltran/model.hpp"

using namespace poltran;

namespace {
ModelParams reference_params() {
  ModelParams p;
  p.exciton_energy = 1.96;
  p.cavity_energy = 1.90;
  p.collective_coupling = 0.120;
  p.n_molecules = 2000;
  p.n_cavity_modes = 57;
  p.spacing = 16.0;
  return p;
}
}  // namespace

TEST_CASE("cavity dispersion") {
  const ModelParams p = reference_params();
  CHECK(cavity_dispersion(0.0, p) == doctest::Approx(1.90).epsilon(1e-14));
  CHECK(cavity_dispersion(p.k_perp(), p) ==
        doctest::Approx(std::sqrt(2.0) * 1.90).epsilon(1e-12));
  // light-line asymptote
  const double k_large = 1e3 * p.k_perp();
  CHECK(cavity_dispersion(k_large, p) / (units::hbar * units::c_light * k_large) ==
        doctest::Approx(1.0).epsilon(1e-5));
  // even in k
  CHECK(cavity_dispersion(-0.004, p) == cavity_dispersion(0.004, p));
}

TEST_CASE("coupling at k") {
  const ModelParams p = reference_params();
  CHECK(coupling_at_k(0.0, p) == doctest::Approx(0.120).epsilon(1e-14));
  CHECK(coupling_at_k(p.k_perp(), p) ==
        doctest::Approx(0.120 * std::pow(2.0, -0.25)).epsilon(1e-12));

  // direct formula sqrt(w_k/w_c)*cos(theta) with tan(theta) = k/k_perp
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uk(-3.0 * p.k_perp(), 3.0 * p.k_perp());
  for (int i = 0; i < 10; ++i) {
    const double k = uk(rng);
    const double wk = cavity_dispersion(k, p);
    const double cos_theta = std::cos(std::atan2(std::abs(k), p.k_perp()));
    const double direct = 0.120 * std::sqrt(wk / 1.90) * cos_theta;
    CHECK(coupling_at_k(k, p) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("polariton point at k = 0 and resonance") {
  const ModelParams p = reference_params();
  const BandPoint b0 = polariton_point(0.0, p);
  CHECK(b0.energy_lp == doctest::Approx(1.8063).epsilon(5e-5));
  CHECK(b0.energy_up == doctest::Approx(2.0537).epsilon(5e-5));
  CHECK(b0.hopfield_lp == doctest::Approx(0.3787).epsilon(5e-4));

  // resonant k*: hbar*c*k = sqrt(w0^2 - wc^2)
  const double k_res =
      std::sqrt(1.96 * 1.96 - 1.90 * 1.90) / (units::hbar * units::c_light);
  const BandPoint br = polariton_point(k_res, p);
  const double g = coupling_at_k(k_res, p);
  CHECK(br.energy_up == doctest::Approx(1.96 + g).epsilon(1e-12));
  CHECK(br.energy_lp == doctest::Approx(1.96 - g).epsilon(1e-12));
  CHECK(br.hopfield_lp == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("hopfield limits") {
  ModelParams p = reference_params();
  // deep photonic LP: cavity far below the exciton
  p.cavity_energy = 0.4;
  CHECK(polariton_point(0.0, p).hopfield_lp < 0.01);
  // far above resonance the LP is exciton-like
  p.cavity_energy = 1.90;
  CHECK(polariton_point(20.0 * p.k_perp(), p).hopfield_lp > 0.99);
}

TEST_CASE("band invariants on a mirrored grid") {
  const ModelParams p = reference_params();
  for (int i = 0; i <= 40; ++i) {
    const double k = (i - 20) * 2e-4;
    const BandPoint b = polariton_point(k, p);
    const BandPoint bm = polariton_point(-k, p);
    CHECK(b.energy_up + b.energy_lp - b.photon_energy - p.exciton_energy ==
          doctest::Approx(0.0).epsilon(1e-12));
    const double s2 = std::sin(b.mixing_angle) * std::sin(b.mixing_angle);
    CHECK(s2 + b.zeta_up_sq == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s2 == doctest::Approx(b.hopfield_lp).epsilon(1e-12));
    CHECK(b.mixing_angle >= 0.0);
    CHECK(b.mixing_angle < std::acos(-1.0) / 2);
    CHECK(b.dark_gap > 0.0);
    // parity
    CHECK(b.photon_energy == bm.photon_energy);
    CHECK(b.energy_up == bm.energy_up);
    CHECK(b.hopfield_lp == bm.hopfield_lp);
    CHECK(bare_group_velocity(k, Branch::lp, p) ==
          doctest::Approx(-bare_group_velocity(-k, Branch::lp, p)).epsilon(1e-12));
  }
}

TEST_CASE("avoided crossing equals the collective Rabi splitting") {
  const ModelParams p = reference_params();
  const double k_res =
      std::sqrt(1.96 * 1.96 - 1.90 * 1.90) / (units::hbar * units::c_light);
  double min_gap = 1e9;
  double k_at_min = 0;
  for (int i = 0; i <= 4000; ++i) {
    const double k = i * 3.0 * p.k_perp() / 4000;
    const BandPoint b = polariton_point(k, p);
    if (b.energy_up - b.energy_lp < min_gap) {
      min_gap = b.energy_up - b.energy_lp;
      k_at_min = k;
    }
  }
  CHECK(min_gap >= 2.0 * coupling_at_k(k_at_min, p) - 1e-12);
  const BandPoint br = polariton_point(k_res, p);
  CHECK(br.energy_up - br.energy_lp ==
        doctest::Approx(2.0 * coupling_at_k(k_res, p)).epsilon(1e-12));
}

TEST_CASE("group velocity: analytic vs finite differences") {
  const ModelParams p = reference_params();
  CHECK(bare_group_velocity(0.0, Branch::lp, p) == 0.0);
  CHECK(bare_group_velocity(0.0, Branch::up, p) == 0.0);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uk(1e-4, 3.0 * p.k_perp());
  const double h = 1e-6;
  for (int i = 0; i < 5; ++i) {
    const double k = uk(rng);
    for (Branch br : {Branch::up, Branch::lp}) {
      const double analytic = bare_group_velocity(k, br, p);
      auto energy = [&](double kk) {
        const BandPoint b = polariton_point(kk, p);
        return br == Branch::up ? b.energy_up : b.energy_lp;
      };
      const double fd = (energy(k + h) - energy(k - h)) / (2 * h * units::hbar);
      CHECK(analytic == doctest::Approx(fd).epsilon(1e-6));
    }
    CHECK(std::abs(bare_group_velocity(k, Branch::lp, p)) < units::c_light);
  }
}

TEST_CASE("LP energy inversion") {
  const ModelParams p = reference_params();
  const double k_max = 3.0 * p.k_perp();
  for (double e : {1.82, 1.84, 1.86, 1.88}) {
    const double k = lp_wavevector_for_energy(e, p, k_max);
    CHECK(polariton_point(k, p).energy_lp == doctest::Approx(e).epsilon(1e-10));
  }
  CHECK_THROWS(lp_wavevector_for_energy(1.5, p, k_max));
}

TEST_CASE("mode grid") {
  const ModelParams p = reference_params();
  const KGrid grid = KGrid::modes(p);
  CHECK(grid.size() == 57);
  CHECK(grid.indices.front() == -28);
  CHECK(grid.indices.back() == 28);
  CHECK(grid.k_par[28] == 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid.k_par[i] > grid.k_par[i - 1]);
  CHECK(grid.k_par.back() == doctest::Approx(-grid.k_par.front()).epsilon(1e-15));
}

TEST_CASE("parameter validation") {
  ModelParams p = reference_params();
  p.n_cavity_modes = 56;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = reference_params();
  p.n_molecules = 10;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = reference_params();
  p.spacing = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
