#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "poltran/hamiltonian.hpp"
#include "poltran/wavepacket.hpp"

using namespace poltran;

namespace {
ModelParams small_params() {
  ModelParams p;
  p.n_molecules = 400;
  p.n_cavity_modes = 41;
  p.spacing = 16.0;
  return p;
}
}  // namespace

TEST_CASE("normalization, mean k, and leakage") {
  const ModelParams p = small_params();
  const KGrid grid = KGrid::modes(p);
  const double k0 = grid.k_par[static_cast<std::size_t>(grid.size() * 3 / 4)];

  WavepacketInit init;
  init.center_k = k0;
  init.width_k = 3.0 * (grid.k_par[1] - grid.k_par[0]);
  const PreparedState s = initialize_wavepacket(init, p);

  CHECK(s.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));
  // asymmetric tail truncation at the grid edge biases the mean slightly
  CHECK(s.mean_k == doctest::Approx(k0).epsilon(1e-3));
  CHECK(s.leakage < 1e-3);

  // pushing the center to the grid edge loses real weight
  WavepacketInit edge = init;
  edge.center_k = grid.k_par.back() - 0.1 * init.width_k;
  CHECK(initialize_wavepacket(edge, p).leakage > 0.2);
  edge.center_k = 2.0 * grid.k_par.back();
  CHECK_THROWS_AS(initialize_wavepacket(edge, p), std::invalid_argument);
}

TEST_CASE("energy width converts through the local LP slope") {
  const ModelParams p = small_params();
  const KGrid grid = KGrid::modes(p);
  const double k0 = grid.k_par[static_cast<std::size_t>(grid.size() * 3 / 4)];

  WavepacketInit by_e;
  by_e.center_k = k0;
  by_e.width_e = 10e-3;
  WavepacketInit by_k;
  by_k.center_k = k0;
  by_k.width_k = 10e-3 / (units::hbar * std::abs(bare_group_velocity(k0, Branch::lp, p)));

  const PreparedState a = initialize_wavepacket(by_e, p);
  const PreparedState b = initialize_wavepacket(by_k, p);
  CHECK((a.amplitudes - b.amplitudes).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("narrow packet reduces to a single LP eigenstate") {
  const ModelParams p = small_params();
  const KGrid grid = KGrid::modes(p);
  const std::size_t j0 = static_cast<std::size_t>(grid.size() * 3 / 4);
  const double k0 = grid.k_par[j0];

  WavepacketInit init;
  init.center_k = k0;
  init.width_k = 1e-7;
  const PreparedState s = initialize_wavepacket(init, p);

  const BandPoint bp = polariton_point(k0, p);
  const double photon_weight =
      std::norm(s.amplitudes[p.n_molecules + static_cast<long>(j0)]);
  CHECK(photon_weight == doctest::Approx(bp.zeta_up_sq).epsilon(1e-10));
  CHECK(s.amplitudes.head(p.n_molecules).squaredNorm() ==
        doctest::Approx(bp.hopfield_lp).epsilon(1e-10));

  // eigenstate check: H psi = E_LP psi
  const DiscretizedBath none = discretize_bath({.lambda = 0.0, .omega_f = 6e-3, .n_modes = 1});
  QuantumHamiltonian h(p, none, 0.0);
  Eigen::MatrixXcd state = s.amplitudes;
  Eigen::MatrixXd site_e = Eigen::MatrixXd::Zero(p.n_molecules, 1);
  site_e.array() += p.exciton_energy;
  Eigen::MatrixXcd hpsi;
  h.apply(state, site_e, hpsi);
  CHECK((hpsi - bp.energy_lp * state).norm() ==
        doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("packet is localized at the requested center") {
  const ModelParams p = small_params();
  const KGrid grid = KGrid::modes(p);
  const double k0 = grid.k_par[static_cast<std::size_t>(grid.size() * 3 / 4)];

  WavepacketInit init;
  init.center_k = k0;
  init.width_k = 4.0 * (grid.k_par[1] - grid.k_par[0]);
  init.center_x = 0;  // defaults to box/4
  const PreparedState s = initialize_wavepacket(init, p);

  const DiscretizedBath none = discretize_bath({.lambda = 0.0, .omega_f = 6e-3, .n_modes = 1});
  QuantumHamiltonian h(p, none, p.exciton_energy);
  Eigen::MatrixXd density;
  Eigen::MatrixXcd state = s.amplitudes;
  h.real_space_density(state, density);

  long peak = 0;
  density.col(0).maxCoeff(&peak);
  const double x_peak = p.spacing * static_cast<double>(peak);
  const double sigma_x = 1.0 / (std::sqrt(2.0) * init.width_k);
  CHECK(std::abs(x_peak - 0.25 * p.box_length()) < 2.0 * sigma_x + p.spacing);
}
