#pragma once

// Unit system used throughout: energies in eV, time in fs, length in nm,
// temperature in K. Frequencies are carried as energies (hbar*omega).

namespace poltran::units {

inline constexpr double hbar = 0.6582119569;           // eV fs
inline constexpr double c_light = 299.792458;          // nm / fs
inline constexpr double k_boltzmann = 8.617333262e-5;  // eV / K

}  // namespace poltran::units
