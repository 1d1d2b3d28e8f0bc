#include <benchmark/benchmark.h>

#include "poltran/greens.hpp"
#include "poltran/propagate.hpp"
#include "poltran/wavepacket.hpp"

using namespace poltran;

namespace {

ModelParams reference_params() {
  ModelParams p;
  p.n_molecules = 2000;
  p.n_cavity_modes = 57;
  p.spacing = 16.0;
  return p;
}

}  // namespace

// matrix-free H application at production scale, batched over trajectories
static void BM_hamiltonian_apply(benchmark::State& state) {
  const ModelParams p = reference_params();
  const DiscretizedBath bath = discretize_bath({.lambda = 6e-3, .omega_f = 6e-3, .n_modes = 35});
  QuantumHamiltonian h(p, bath, p.exciton_energy);
  const long batch = state.range(0);

  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Random(h.dim(), batch);
  Eigen::MatrixXd site_e = Eigen::MatrixXd::Random(p.n_molecules, batch) * 0.01;
  Eigen::MatrixXcd out;
  for (auto _ : state) {
    h.apply(psi, site_e, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(BM_hamiltonian_apply)->Arg(1)->Arg(5)->Arg(10)->Arg(20);

// one full nuclear step (velocity-Verlet + RK4 substeps) per trajectory
static void BM_nuclear_step(benchmark::State& state) {
  const ModelParams p = reference_params();
  const DiscretizedBath bath = discretize_bath({.lambda = 6e-3, .omega_f = 6e-3, .n_modes = 35});
  QuantumHamiltonian h(p, bath, p.exciton_energy);
  const long batch = state.range(0);

  WavepacketInit init;
  init.center_k = 0.0034;
  const PreparedState s = initialize_wavepacket(init, p);
  Eigen::MatrixXcd psi(h.dim(), batch);
  for (long b = 0; b < batch; ++b) psi.col(b) = s.amplitudes;
  std::vector<NuclearPhaseSpace> nuclei(static_cast<std::size_t>(batch));
  for (long b = 0; b < batch; ++b)
    nuclei[static_cast<std::size_t>(b)] =
        sample_wigner(ThermalState{.temperature = 300.0}, bath, p.n_molecules,
                      static_cast<std::uint64_t>(b));

  PropagationConfig cfg;
  cfg.dt_nuclear = 2.5;
  cfg.dt_electronic = state.range(1) == 0 ? 0.025 : 0.25;
  cfg.n_steps = 1;
  cfg.snapshot_stride = 1000;
  for (auto _ : state) propagate(h, psi, nuclei, cfg, bath);
  state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(BM_nuclear_step)->Args({1, 0})->Args({10, 0})->Args({1, 1})->Args({10, 1})
    ->Unit(benchmark::kMillisecond);

// on-shell self-energy with the production bath resolution
static void BM_self_energy_point(benchmark::State& state) {
  const ModelParams p = reference_params();
  const DiscretizedBath bath =
      discretize_bath({.lambda = 6e-3, .omega_f = 6e-3, .n_modes = 10000});
  const ThermalState warm{.temperature = 300.0};
  const SelfEnergyConfig cfg;
  for (auto _ : state) {
    const double vg = lp_vg_at(0.0034, p, bath, warm, cfg);
    benchmark::DoNotOptimize(vg);
  }
}
BENCHMARK(BM_self_energy_point)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
