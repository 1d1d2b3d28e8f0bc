#pragma once

#include <cstdint>
#include <vector>

#include "poltran/bath.hpp"
#include "poltran/propagate.hpp"
#include "poltran/thermal.hpp"
#include "poltran/wavefront.hpp"
#include "poltran/wavepacket.hpp"

namespace poltran {

struct EnsembleConfig {
  int n_traj = 100;
  std::uint64_t base_seed = 1;
  int batch = 10;         // trajectories propagated in lockstep; part of the
                          // reduction order, independent of worker count
  int n_workers = 0;      // 0 = hardware concurrency
  double threshold = 0.05;
  double t_fit_begin = 100.0;  // fs
  double t_fit_end = 400.0;    // fs
  double max_failure_fraction = 0.05;
  double energy_ref = 0;  // eV; 0 = exciton energy (rotating frame)
};

struct EnsembleResult {
  std::vector<double> times;                  // fs, snapshot instants
  std::vector<double> x;                      // nm, lattice positions
  std::vector<Eigen::VectorXd> density;       // trajectory-averaged rho(x, t)
  WavefrontResult wavefront;
  double vg_fit = 0;        // nm/fs
  double vg_stderr = 0;
  int n_traj = 0;
  int n_failed = 0;
  std::uint64_t base_seed = 0;
  double max_norm_drift = 0;
  double max_energy_drift = 0;   // eV
  double wavepacket_leakage = 0;
};

// Runs n_traj Wigner-sampled trajectories from a shared initial wavepacket,
// averages real-space densities, and extracts the front velocity from the
// averaged density. Bit-reproducible for a fixed (config, seed): trajectory
// seeds derive from (base_seed, index) and the reduction order is fixed by
// batch index regardless of worker count.
EnsembleResult run_ensemble(const ModelParams& params, const BathSpec& bath_spec,
                            const ThermalState& thermal, const WavepacketInit& init,
                            const PropagationConfig& prop, const EnsembleConfig& cfg);

}  // namespace poltran
