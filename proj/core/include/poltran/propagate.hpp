#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "poltran/hamiltonian.hpp"
#include "poltran/wigner.hpp"

namespace poltran {

struct PropagationConfig {
  double dt_nuclear = 2.5;      // fs, velocity-Verlet step
  double dt_electronic = 0.025; // fs, RK4 substep; dt_nuclear/dt_electronic integer
  int n_steps = 160;            // nuclear steps
  int snapshot_stride = 4;      // nuclear steps between snapshot callbacks

  int substeps() const;         // validated ratio
};

// Per-column diagnostics accumulated over a propagation.
struct PropagationStats {
  Eigen::VectorXd norm_drift;    // max |norm^2 - 1|
  Eigen::VectorXd energy_drift;  // max |E_tot(t) - E_tot(0)| in eV
};

// Called at t=0 and after every snapshot_stride nuclear steps.
// `density` is the real-space probability density, N x B.
using SnapshotCallback =
    std::function<void(int step, double time, const Eigen::MatrixXd& density,
                       const Eigen::MatrixXcd& state)>;

// Mean-field Ehrenfest propagation of a batch of trajectories in lockstep:
// velocity-Verlet for the nuclei under the mean-field force, with RK4 TDSE
// substeps under H_Q frozen at the half-step nuclear position. Throws
// std::runtime_error on NaN/Inf in the state.
PropagationStats propagate(const QuantumHamiltonian& h, Eigen::MatrixXcd& state,
                           std::vector<NuclearPhaseSpace>& nuclei,
                           const PropagationConfig& cfg, const DiscretizedBath& bath,
                           const SnapshotCallback& on_snapshot = nullptr);

// Classical bath energy sum (P^2 + w^2 R^2)/2 per trajectory, eV.
double bath_energy(const NuclearPhaseSpace& ps, const DiscretizedBath& bath);

}  // namespace poltran
