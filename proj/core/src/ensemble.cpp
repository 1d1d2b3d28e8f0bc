#include "poltran/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace poltran {

EnsembleResult run_ensemble(const ModelParams& params, const BathSpec& bath_spec,
                            const ThermalState& thermal, const WavepacketInit& init,
                            const PropagationConfig& prop, const EnsembleConfig& cfg) {
  if (cfg.n_traj < 1 || cfg.batch < 1)
    throw std::invalid_argument("run_ensemble: n_traj and batch must be >= 1");
  const DiscretizedBath bath = discretize_bath(bath_spec);
  const double energy_ref = cfg.energy_ref > 0 ? cfg.energy_ref : params.exciton_energy;
  const QuantumHamiltonian h(params, bath, energy_ref);
  const PreparedState prepared = initialize_wavepacket(init, params);

  const int n_frames = prop.n_steps / prop.snapshot_stride + 1 +
                       (prop.n_steps % prop.snapshot_stride != 0 ? 1 : 0);
  const long n_sites = h.n_sites();
  const int n_batches = (cfg.n_traj + cfg.batch - 1) / cfg.batch;

  struct BatchOut {
    std::vector<Eigen::MatrixXd> frames;  // per snapshot, N x 1 column-summed
    std::vector<double> times;
    double norm_drift = 0;
    double energy_drift = 0;
    bool failed = false;
    std::string error;
  };
  std::vector<BatchOut> partial(static_cast<std::size_t>(n_batches));

  std::atomic<int> next_batch{0};
  auto worker = [&]() {
    for (;;) {
      const int bi = next_batch.fetch_add(1);
      if (bi >= n_batches) return;
      BatchOut& out = partial[static_cast<std::size_t>(bi)];
      const int first = bi * cfg.batch;
      const int count = std::min(cfg.batch, cfg.n_traj - first);
      try {
        Eigen::MatrixXcd state(h.dim(), count);
        for (int c = 0; c < count; ++c) state.col(c) = prepared.amplitudes;
        std::vector<NuclearPhaseSpace> nuclei(static_cast<std::size_t>(count));
        for (int c = 0; c < count; ++c)
          nuclei[static_cast<std::size_t>(c)] = sample_wigner(
              thermal, bath, params.n_molecules,
              mix_seed(cfg.base_seed, static_cast<std::uint64_t>(first + c)));

        out.frames.reserve(static_cast<std::size_t>(n_frames));
        out.times.reserve(static_cast<std::size_t>(n_frames));
        auto snapshot = [&](int /*step*/, double time, const Eigen::MatrixXd& density,
                            const Eigen::MatrixXcd& /*state*/) {
          out.frames.emplace_back(density.rowwise().sum());
          out.times.push_back(time);
        };
        const PropagationStats stats = propagate(h, state, nuclei, prop, bath, snapshot);
        out.norm_drift = stats.norm_drift.maxCoeff();
        out.energy_drift = stats.energy_drift.maxCoeff();
      } catch (const std::exception& e) {
        out.failed = true;
        out.error = e.what();
      }
    }
  };

  int n_workers = cfg.n_workers > 0 ? cfg.n_workers
                                    : static_cast<int>(std::thread::hardware_concurrency());
  if (n_workers < 1) n_workers = 1;
  n_workers = std::min(n_workers, n_batches);
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  EnsembleResult result;
  result.base_seed = cfg.base_seed;
  result.wavepacket_leakage = prepared.leakage;
  int n_ok = 0;
  // Fixed-order reduction over batch index keeps the sum bit-identical for
  // any worker count.
  for (int bi = 0; bi < n_batches; ++bi) {
    const BatchOut& out = partial[static_cast<std::size_t>(bi)];
    const int first = bi * cfg.batch;
    const int count = std::min(cfg.batch, cfg.n_traj - first);
    if (out.failed) {
      result.n_failed += count;
      continue;
    }
    if (result.density.empty()) {
      result.times = out.times;
      result.density.assign(out.frames.size(), Eigen::VectorXd::Zero(n_sites));
    }
    for (std::size_t f = 0; f < out.frames.size(); ++f) result.density[f] += out.frames[f];
    result.max_norm_drift = std::max(result.max_norm_drift, out.norm_drift);
    result.max_energy_drift = std::max(result.max_energy_drift, out.energy_drift);
    n_ok += count;
  }
  result.n_traj = n_ok;
  if (n_ok == 0 ||
      static_cast<double>(result.n_failed) > cfg.max_failure_fraction * cfg.n_traj) {
    std::string detail;
    for (const auto& out : partial)
      if (out.failed) { detail = out.error; break; }
    throw std::runtime_error("run_ensemble: too many failed trajectories (" +
                             std::to_string(result.n_failed) + "/" +
                             std::to_string(cfg.n_traj) + "): " + detail);
  }
  for (auto& frame : result.density) frame /= static_cast<double>(n_ok);

  result.x.resize(static_cast<std::size_t>(n_sites));
  for (long i = 0; i < n_sites; ++i)
    result.x[static_cast<std::size_t>(i)] = params.spacing * static_cast<double>(i);
  result.wavefront = track_wavefront(result.density, result.times, result.x, cfg.threshold,
                                     cfg.t_fit_begin, cfg.t_fit_end);
  result.vg_fit = result.wavefront.fit.slope;
  result.vg_stderr = result.wavefront.fit.slope_stderr;
  return result;
}

}  // namespace poltran
