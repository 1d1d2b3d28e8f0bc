#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "poltran/bath.hpp"
#include "poltran/thermal.hpp"

namespace poltran {

// Mass-weighted nuclear phase space for N molecules x N_b modes.
// R in sqrt(eV)*fs, P in sqrt(eV); rows index bath modes, columns molecules.
struct NuclearPhaseSpace {
  Eigen::MatrixXd position;  // N_b x N
  Eigen::MatrixXd momentum;  // N_b x N
};

// Thermal Wigner distribution of each harmonic mode: independent zero-mean
// Gaussians with Var(R) = (hbar/2w)*coth(beta*hbar*w/2) and
// Var(P) = (hbar*w/2)*coth(beta*hbar*w/2). Deterministic for a given seed.
NuclearPhaseSpace sample_wigner(const ThermalState& thermal, const DiscretizedBath& bath,
                                long n_molecules, std::uint64_t seed);

// splitmix64; used to derive independent per-trajectory streams.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

}  // namespace poltran
