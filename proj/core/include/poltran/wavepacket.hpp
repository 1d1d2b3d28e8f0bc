#pragma once

#include <Eigen/Dense>

#include "poltran/model.hpp"

namespace poltran {

// Gaussian LP wavepacket specification. Width may be given either in k
// (1/nm) or as an energy width sigma_e (eV) converted through the local
// slope of the LP band.
struct WavepacketInit {
  double center_k = 0;      // 1/nm, k_0 > 0 for forward propagation
  double width_k = 0;       // 1/nm; if 0, derived from width_e
  double width_e = 10e-3;   // eV, hbar*sigma_E
  double center_x = 0;      // nm; 0 means N*L/4
};

struct PreparedState {
  Eigen::VectorXcd amplitudes;  // N sites then M photon modes, unit norm
  double leakage = 0;           // Gaussian weight lost outside the mode grid
  double mean_k = 0;            // 1/nm, expectation over the LP weights
};

// Gaussian weights exp(-(k-k0)^2/(4 sigma_k^2)) on the LP eigenstates of the
// mode grid, centered at center_x via a plane-wave phase, transformed to the
// site/photon basis through the Hopfield coefficients.
PreparedState initialize_wavepacket(const WavepacketInit& init, const ModelParams& params);

}  // namespace poltran
