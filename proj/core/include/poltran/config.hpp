#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "poltran/bath.hpp"
#include "poltran/ensemble.hpp"
#include "poltran/greens.hpp"
#include "poltran/model.hpp"
#include "poltran/thermal.hpp"

namespace poltran {

// Minimal TOML-compatible key-value store: [section] tables with number,
// boolean, string, and flat number-array values. Enough for run configs;
// serialization round-trips value-identically.
using ConfigValue = std::variant<double, bool, std::string, std::vector<double>>;
using ConfigTable = std::map<std::string, std::map<std::string, ConfigValue>>;

ConfigTable parse_config(const std::string& text);           // throws on syntax errors
ConfigTable parse_config_file(const std::string& path);
std::string serialize_config(const ConfigTable& table);
std::uint64_t config_hash(const ConfigTable& table);         // FNV-1a of canonical text

enum class SweepAxis { lambda, temperature, lp_energy };

// Theory-evaluation settings beyond SelfEnergyConfig: the bath resolution
// and dense k-grid used for band curves.
struct TheoryGrid {
  int n_bath_modes = 10000;
  int dense_points = 2001;
  double k_window = 3.0;  // upper edge in units of k_perp
};

struct RunConfig {
  ModelParams model;
  BathSpec bath;                 // dynamics bath (N_b = 35 scale)
  ThermalState thermal;
  SelfEnergyConfig self_energy;
  TheoryGrid theory;
  WavepacketInit wavepacket;
  double wavepacket_lp_energy = 1.86;  // eV; used when wavepacket.center_k == 0
  PropagationConfig propagation;
  EnsembleConfig ensemble;
  TastParams tast;
  SweepAxis sweep_axis = SweepAxis::lambda;
  std::vector<double> sweep_values{6e-3};
  std::string output_directory = "out";

  void validate() const;

  static RunConfig from_table(const ConfigTable& table);  // unknown keys rejected
  ConfigTable to_table() const;
};

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& name);

// Applies one sweep value, returning the adjusted config. For lp_energy the
// wavepacket target energy is set; lambda and temperature patch the bath and
// thermal state.
RunConfig apply_sweep_value(const RunConfig& base, double value);

}  // namespace poltran
