#pragma once

#include <Eigen/Dense>
#include <complex>

#include "poltran/bath.hpp"
#include "poltran/model.hpp"

namespace poltran {

// Single-excitation quantum Hamiltonian H_Q = H_S + H_SB(R) on the basis of
// N site excitations followed by M photon modes. The exciton block is
// diagonal in sites, the photon block diagonal in k, and the coupling block
// is the rank-structured phase matrix of the lattice, so the operator is
// applied matrix-free at O((N+M)*M) instead of materializing (N+M)^2.
//
// All diagonal energies are shifted by -energy_ref (a rotating frame, i.e. a
// global phase); expectation values add the reference back.
class QuantumHamiltonian {
 public:
  QuantumHamiltonian(const ModelParams& params, const DiscretizedBath& bath,
                     double energy_ref);

  long n_sites() const { return n_; }
  int n_photons() const { return m_; }
  long dim() const { return n_ + m_; }
  double energy_ref() const { return energy_ref_; }
  const ModelParams& params() const { return params_; }
  // c_tilde_a = c_a * sqrt(2*omega_a/hbar) with omega_a in rad/fs: site-energy
  // shift per unit mass-weighted displacement, so c_tilde^2/(2*omega^2) is the
  // per-mode reorganization energy c_a^2/E_a.
  const Eigen::VectorXd& ctilde() const { return ctilde_; }
  const Eigen::VectorXd& photon_energies() const { return photon_energy_; }

  // Site energies (relative to energy_ref) for a batch of nuclear
  // configurations; R[b] is N_b x N, out is N x B.
  void site_energies(const std::vector<Eigen::MatrixXd>& R, Eigen::MatrixXd& out) const;

  // out = H_Q * state, batched over columns. site_e is N x B.
  void apply(const Eigen::MatrixXcd& state, const Eigen::MatrixXd& site_e,
             Eigen::MatrixXcd& out) const;

  // <psi|H_Q|psi> per column, with energy_ref added back (absolute eV).
  Eigen::VectorXd quantum_energy(const Eigen::MatrixXcd& state,
                                 const Eigen::MatrixXd& site_e) const;

  // Dense matrix for small-system oracles (absolute energies, no shift).
  Eigen::MatrixXcd dense(const Eigen::MatrixXd& R) const;

  // Photon-field intensity mapped onto the lattice:
  // |(1/sqrt(N)) sum_k c_k exp(i k x_n)|^2 added to |c_n|^2. out is N x B.
  void real_space_density(const Eigen::MatrixXcd& state, Eigen::MatrixXd& out) const;

 private:
  ModelParams params_;
  long n_;
  int m_;
  double energy_ref_;
  Eigen::VectorXd photon_energy_;   // M, shifted
  Eigen::VectorXcd coupling_;       // M, hbar*g_k (single molecule)
  Eigen::MatrixXcd phase_;          // M x N, exp(-i k x_n)
  Eigen::VectorXd ctilde_;          // N_b
};

}  // namespace poltran
