#include "poltran/propagate.hpp"

#include <cmath>
#include <stdexcept>

namespace poltran {

int PropagationConfig::substeps() const {
  if (!(dt_nuclear > 0) || !(dt_electronic > 0))
    throw std::invalid_argument("propagate: time steps must be > 0");
  const double ratio = dt_nuclear / dt_electronic;
  const int n = static_cast<int>(std::lround(ratio));
  if (n < 1 || std::abs(ratio - n) > 1e-9 * ratio)
    throw std::invalid_argument("propagate: dt_nuclear/dt_electronic must be an integer >= 1");
  return n;
}

double bath_energy(const NuclearPhaseSpace& ps, const DiscretizedBath& bath) {
  double e = 0.5 * ps.momentum.squaredNorm();
  for (long a = 0; a < ps.position.rows(); ++a) {
    const double w = bath.omega[static_cast<std::size_t>(a)] / units::hbar;
    e += 0.5 * w * w * ps.position.row(a).squaredNorm();
  }
  return e;
}

namespace {

struct Rk4Workspace {
  Eigen::MatrixXcd k1, k2, k3, k4, tmp;
};

// One RK4 step of dc/dt = -(i/hbar) H c with frozen site energies.
void rk4_step(const QuantumHamiltonian& h, Eigen::MatrixXcd& state,
              const Eigen::MatrixXd& site_e, double dt, Rk4Workspace& ws) {
  const std::complex<double> scale(0.0, -dt / units::hbar);
  h.apply(state, site_e, ws.k1);
  ws.tmp = state + 0.5 * scale * ws.k1;
  h.apply(ws.tmp, site_e, ws.k2);
  ws.tmp = state + 0.5 * scale * ws.k2;
  h.apply(ws.tmp, site_e, ws.k3);
  ws.tmp = state + scale * ws.k3;
  h.apply(ws.tmp, site_e, ws.k4);
  state += (scale / 6.0) * (ws.k1 + 2.0 * ws.k2 + 2.0 * ws.k3 + ws.k4);
}

}  // namespace

PropagationStats propagate(const QuantumHamiltonian& h, Eigen::MatrixXcd& state,
                           std::vector<NuclearPhaseSpace>& nuclei,
                           const PropagationConfig& cfg, const DiscretizedBath& bath,
                           const SnapshotCallback& on_snapshot) {
  const long batch = state.cols();
  if (static_cast<long>(nuclei.size()) != batch)
    throw std::invalid_argument("propagate: one nuclear phase space per state column");
  const int substeps = cfg.substeps();
  const long n = h.n_sites();
  const long nb = h.ctilde().size();

  Eigen::VectorXd w2(nb);
  for (long a = 0; a < nb; ++a) {
    const double w = bath.omega[static_cast<std::size_t>(a)] / units::hbar;
    w2[a] = w * w;
  }
  const Eigen::VectorXd& ctilde = h.ctilde();

  Rk4Workspace ws;
  Eigen::MatrixXd site_e(n, batch), pop(n, batch), density;
  std::vector<Eigen::MatrixXd> r_half(batch);
  Eigen::MatrixXd force;

  PropagationStats stats;
  stats.norm_drift = Eigen::VectorXd::Zero(batch);
  stats.energy_drift = Eigen::VectorXd::Zero(batch);

  auto total_energy = [&](Eigen::VectorXd& out) {
    std::vector<Eigen::MatrixXd> rs(batch);
    for (long b = 0; b < batch; ++b) rs[b] = nuclei[b].position;
    Eigen::MatrixXd eps;
    h.site_energies(rs, eps);
    out = h.quantum_energy(state, eps);
    for (long b = 0; b < batch; ++b) out[b] += bath_energy(nuclei[b], bath);
  };

  Eigen::VectorXd e0(batch), e_now(batch);
  total_energy(e0);

  auto check_and_record = [&](int step, double time) {
    if (!state.allFinite())
      throw std::runtime_error("propagate: non-finite amplitudes at t = " +
                               std::to_string(time) + " fs");
    for (long b = 0; b < batch; ++b) {
      const double drift = std::abs(state.col(b).squaredNorm() - 1.0);
      if (drift > stats.norm_drift[b]) stats.norm_drift[b] = drift;
    }
    total_energy(e_now);
    for (long b = 0; b < batch; ++b) {
      const double drift = std::abs(e_now[b] - e0[b]);
      if (drift > stats.energy_drift[b]) stats.energy_drift[b] = drift;
    }
    if (on_snapshot) {
      h.real_space_density(state, density);
      on_snapshot(step, time, density, state);
    }
  };

  check_and_record(0, 0.0);

  const double dtn = cfg.dt_nuclear;
  for (int step = 1; step <= cfg.n_steps; ++step) {
    pop = state.topRows(n).cwiseAbs2();
    for (long b = 0; b < batch; ++b) {
      NuclearPhaseSpace& ps = nuclei[b];
      force.noalias() = -(ctilde * pop.col(b).transpose());
      force.array() -= ps.position.array().colwise() * w2.array();
      ps.momentum += (0.5 * dtn) * force;                 // half kick
      r_half[b] = ps.position + (0.5 * dtn) * ps.momentum;
      ps.position += dtn * ps.momentum;                   // full drift
    }
    h.site_energies(r_half, site_e);
    for (int s = 0; s < substeps; ++s) rk4_step(h, state, site_e, cfg.dt_electronic, ws);
    pop = state.topRows(n).cwiseAbs2();
    for (long b = 0; b < batch; ++b) {
      NuclearPhaseSpace& ps = nuclei[b];
      force.noalias() = -(ctilde * pop.col(b).transpose());
      force.array() -= ps.position.array().colwise() * w2.array();
      ps.momentum += (0.5 * dtn) * force;                 // closing half kick
    }
    if (step % cfg.snapshot_stride == 0 || step == cfg.n_steps)
      check_and_record(step, step * dtn);
  }
  return stats;
}

}  // namespace poltran
