#include "poltran/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace poltran {

using std::complex;

QuantumHamiltonian::QuantumHamiltonian(const ModelParams& params,
                                       const DiscretizedBath& bath, double energy_ref)
    : params_(params), n_(params.n_molecules), m_(params.n_cavity_modes),
      energy_ref_(energy_ref) {
  params.validate();
  const KGrid grid = KGrid::modes(params);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_));

  photon_energy_.resize(m_);
  coupling_.resize(m_);
  phase_.resize(m_, n_);
  for (int k = 0; k < m_; ++k) {
    photon_energy_[k] = cavity_dispersion(grid.k_par[k], params) - energy_ref_;
    // coupling_at_k is the collective sqrt(N)*hbar*g_k; per molecule divide by sqrt(N)
    coupling_[k] = coupling_at_k(grid.k_par[k], params) * inv_sqrt_n;
    for (long n = 0; n < n_; ++n) {
      const double phi = grid.k_par[k] * params.spacing * static_cast<double>(n);
      phase_(k, n) = std::polar(1.0, -phi);
    }
  }

  ctilde_.resize(static_cast<long>(bath.size()));
  for (std::size_t a = 0; a < bath.size(); ++a)
    ctilde_[static_cast<long>(a)] =
        bath.coupling[a] * std::sqrt(2.0 * bath.omega[a]) / units::hbar;
}

void QuantumHamiltonian::site_energies(const std::vector<Eigen::MatrixXd>& R,
                                       Eigen::MatrixXd& out) const {
  const long batch = static_cast<long>(R.size());
  out.resize(n_, batch);
  const double e0 = params_.exciton_energy - energy_ref_;
  for (long b = 0; b < batch; ++b) {
    if (R[b].rows() != ctilde_.size() || R[b].cols() != n_)
      throw std::invalid_argument("site_energies: nuclear array shape mismatch");
    out.col(b) = (ctilde_.transpose() * R[b]).transpose();
    out.col(b).array() += e0;
  }
}

void QuantumHamiltonian::apply(const Eigen::MatrixXcd& state, const Eigen::MatrixXd& site_e,
                               Eigen::MatrixXcd& out) const {
  if (state.rows() != dim() || site_e.rows() != n_ || site_e.cols() != state.cols())
    throw std::invalid_argument("apply: shape mismatch");
  out.resize(dim(), state.cols());
  const auto ex = state.topRows(n_);
  const auto ph = state.bottomRows(m_);
  // photon rows: E_k c_k + hbar*g_k * sum_n e^{-i k x_n} c_n
  out.bottomRows(m_).noalias() = phase_ * ex;
  out.bottomRows(m_).array().colwise() *= coupling_.array();
  out.bottomRows(m_).array() += ph.array().colwise() * photon_energy_.array().cast<complex<double>>();
  // exciton rows: eps_n c_n + sum_k hbar*g_k e^{+i k x_n} c_k
  out.topRows(n_).noalias() = phase_.adjoint() * (ph.array().colwise() * coupling_.array()).matrix();
  out.topRows(n_).array() += ex.array() * site_e.array();
}

Eigen::VectorXd QuantumHamiltonian::quantum_energy(const Eigen::MatrixXcd& state,
                                                   const Eigen::MatrixXd& site_e) const {
  Eigen::MatrixXcd hc;
  apply(state, site_e, hc);
  Eigen::VectorXd energy(state.cols());
  for (long b = 0; b < state.cols(); ++b) {
    const double norm2 = state.col(b).squaredNorm();
    energy[b] = (state.col(b).dot(hc.col(b))).real() + energy_ref_ * norm2;
  }
  return energy;
}

Eigen::MatrixXcd QuantumHamiltonian::dense(const Eigen::MatrixXd& R) const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim(), dim());
  std::vector<Eigen::MatrixXd> batch{R};
  Eigen::MatrixXd eps;
  site_energies(batch, eps);
  for (long n = 0; n < n_; ++n) h(n, n) = eps(n, 0) + energy_ref_;
  for (int k = 0; k < m_; ++k) {
    h(n_ + k, n_ + k) = photon_energy_[k] + energy_ref_;
    for (long n = 0; n < n_; ++n) {
      h(n_ + k, n) = coupling_[k] * phase_(k, n);
      h(n, n_ + k) = std::conj(h(n_ + k, n));
    }
  }
  return h;
}

void QuantumHamiltonian::real_space_density(const Eigen::MatrixXcd& state,
                                            Eigen::MatrixXd& out) const {
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_));
  Eigen::MatrixXcd field = phase_.adjoint() * state.bottomRows(m_);
  out = state.topRows(n_).cwiseAbs2() + (field * inv_sqrt_n).cwiseAbs2();
}

}  // namespace poltran
