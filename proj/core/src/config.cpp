#include "poltran/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace poltran {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad number '" + tok + "' on line " +
                             std::to_string(line_no));
  }
}

ConfigValue parse_value(const std::string& raw, int line_no) {
  if (raw.empty()) throw std::runtime_error("config: empty value on line " + std::to_string(line_no));
  if (raw == "true") return true;
  if (raw == "false") return false;
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"')
      throw std::runtime_error("config: unterminated string on line " + std::to_string(line_no));
    return raw.substr(1, raw.size() - 2);
  }
  if (raw.front() == '[') {
    if (raw.back() != ']')
      throw std::runtime_error("config: unterminated array on line " + std::to_string(line_no));
    std::vector<double> values;
    std::string body = raw.substr(1, raw.size() - 2);
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      values.push_back(parse_number(tok, line_no));
    }
    return values;
  }
  return parse_number(raw, line_no);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double get_num(const ConfigTable& t, const std::string& sec, const std::string& key,
               double fallback) {
  auto si = t.find(sec);
  if (si == t.end()) return fallback;
  auto ki = si->second.find(key);
  if (ki == si->second.end()) return fallback;
  if (const double* d = std::get_if<double>(&ki->second)) return *d;
  throw std::runtime_error("config: [" + sec + "] " + key + " must be a number");
}

bool get_bool(const ConfigTable& t, const std::string& sec, const std::string& key,
              bool fallback) {
  auto si = t.find(sec);
  if (si == t.end()) return fallback;
  auto ki = si->second.find(key);
  if (ki == si->second.end()) return fallback;
  if (const bool* b = std::get_if<bool>(&ki->second)) return *b;
  throw std::runtime_error("config: [" + sec + "] " + key + " must be a boolean");
}

std::string get_str(const ConfigTable& t, const std::string& sec, const std::string& key,
                    const std::string& fallback) {
  auto si = t.find(sec);
  if (si == t.end()) return fallback;
  auto ki = si->second.find(key);
  if (ki == si->second.end()) return fallback;
  if (const std::string* s = std::get_if<std::string>(&ki->second)) return *s;
  throw std::runtime_error("config: [" + sec + "] " + key + " must be a string");
}

std::vector<double> get_array(const ConfigTable& t, const std::string& sec,
                              const std::string& key, std::vector<double> fallback) {
  auto si = t.find(sec);
  if (si == t.end()) return fallback;
  auto ki = si->second.find(key);
  if (ki == si->second.end()) return fallback;
  if (const auto* a = std::get_if<std::vector<double>>(&ki->second)) return *a;
  throw std::runtime_error("config: [" + sec + "] " + key + " must be an array");
}

const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"model", {"exciton_energy", "cavity_energy", "collective_coupling", "n_molecules",
                 "n_cavity_modes", "spacing"}},
      {"bath", {"lambda", "omega_f", "n_modes"}},
      {"thermal", {"temperature"}},
      {"self_energy", {"eta", "dark_only", "self_consistent", "n_bath_modes",
                       "dense_points", "k_window"}},
      {"wavepacket", {"lp_energy", "center_k", "width_k", "width_e", "center_x"}},
      {"ensemble", {"n_traj", "base_seed", "batch", "n_workers", "dt_nuclear",
                    "dt_electronic", "t_max", "snapshot_stride", "threshold",
                    "fit_begin", "fit_end", "energy_ref"}},
      {"tast", {"g"}},
      {"sweep", {"axis", "values"}},
      {"output", {"directory"}},
  };
  return keys;
}

}  // namespace

ConfigTable parse_config(const std::string& text) {
  ConfigTable table;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = std::string::npos;
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_string = !in_string;
      if (line[i] == '#' && !in_string) { hash = i; break; }
    }
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config: bad section header on line " + std::to_string(line_no));
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw std::runtime_error("config: empty section name on line " + std::to_string(line_no));
      table[section];
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key = value on line " + std::to_string(line_no));
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config: empty key on line " + std::to_string(line_no));
    table[section][key] = parse_value(raw, line_no);
  }
  return table;
}

ConfigTable parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ConfigTable& table) {
  std::string out;
  for (const auto& [section, entries] : table) {
    out += "[" + section + "]\n";
    for (const auto& [key, value] : entries) {
      out += key + " = ";
      if (const double* d = std::get_if<double>(&value)) {
        out += format_number(*d);
      } else if (const bool* b = std::get_if<bool>(&value)) {
        out += *b ? "true" : "false";
      } else if (const std::string* s = std::get_if<std::string>(&value)) {
        out += "\"" + *s + "\"";
      } else {
        const auto& arr = std::get<std::vector<double>>(value);
        out += "[";
        for (std::size_t i = 0; i < arr.size(); ++i) {
          if (i) out += ", ";
          out += format_number(arr[i]);
        }
        out += "]";
      }
      out += "\n";
    }
    out += "\n";
  }
  return out;
}

std::uint64_t config_hash(const ConfigTable& table) {
  const std::string text = serialize_config(table);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::lambda: return "lambda";
    case SweepAxis::temperature: return "temperature";
    case SweepAxis::lp_energy: return "lp_energy";
  }
  return "lambda";
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "lambda") return SweepAxis::lambda;
  if (name == "temperature") return SweepAxis::temperature;
  if (name == "lp_energy") return SweepAxis::lp_energy;
  throw std::runtime_error("config: unknown sweep axis '" + name + "'");
}

void RunConfig::validate() const {
  model.validate();
  bath.validate();
  thermal.validate();
  if (sweep_values.empty()) throw std::invalid_argument("config: sweep values empty");
  for (double v : sweep_values) {
    if (!std::isfinite(v)) throw std::invalid_argument("config: sweep value not finite");
    if (sweep_axis != SweepAxis::lambda && !(v > 0))
      throw std::invalid_argument("config: sweep value must be > 0");
    if (sweep_axis == SweepAxis::lambda && !(v >= 0))
      throw std::invalid_argument("config: lambda sweep value must be >= 0");
  }
  if (!(ensemble.threshold > 0 && ensemble.threshold < 1))
    throw std::invalid_argument("config: threshold must be in (0,1)");
}

RunConfig RunConfig::from_table(const ConfigTable& table) {
  for (const auto& [section, entries] : table) {
    auto ki = known_keys().find(section);
    if (ki == known_keys().end())
      throw std::runtime_error("config: unknown section [" + section + "]");
    for (const auto& [key, value] : entries) {
      (void)value;
      const auto& allowed = ki->second;
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw std::runtime_error("config: unknown key '" + key + "' in [" + section + "]");
    }
  }

  RunConfig c;
  c.model.exciton_energy = get_num(table, "model", "exciton_energy", c.model.exciton_energy);
  c.model.cavity_energy = get_num(table, "model", "cavity_energy", c.model.cavity_energy);
  c.model.collective_coupling =
      get_num(table, "model", "collective_coupling", c.model.collective_coupling);
  c.model.n_molecules =
      static_cast<long>(get_num(table, "model", "n_molecules", static_cast<double>(c.model.n_molecules)));
  c.model.n_cavity_modes =
      static_cast<int>(get_num(table, "model", "n_cavity_modes", c.model.n_cavity_modes));
  c.model.spacing = get_num(table, "model", "spacing", c.model.spacing);

  c.bath.lambda = get_num(table, "bath", "lambda", c.bath.lambda);
  c.bath.omega_f = get_num(table, "bath", "omega_f", c.bath.omega_f);
  c.bath.n_modes = static_cast<int>(get_num(table, "bath", "n_modes", c.bath.n_modes));

  c.thermal.temperature = get_num(table, "thermal", "temperature", c.thermal.temperature);

  c.self_energy.eta = get_num(table, "self_energy", "eta", c.self_energy.eta);
  c.self_energy.dark_only = get_bool(table, "self_energy", "dark_only", c.self_energy.dark_only);
  c.self_energy.self_consistent =
      get_bool(table, "self_energy", "self_consistent", c.self_energy.self_consistent);
  c.theory.n_bath_modes =
      static_cast<int>(get_num(table, "self_energy", "n_bath_modes", c.theory.n_bath_modes));
  c.theory.dense_points =
      static_cast<int>(get_num(table, "self_energy", "dense_points", c.theory.dense_points));
  c.theory.k_window = get_num(table, "self_energy", "k_window", c.theory.k_window);

  c.wavepacket_lp_energy = get_num(table, "wavepacket", "lp_energy", c.wavepacket_lp_energy);
  c.wavepacket.center_k = get_num(table, "wavepacket", "center_k", c.wavepacket.center_k);
  c.wavepacket.width_k = get_num(table, "wavepacket", "width_k", c.wavepacket.width_k);
  c.wavepacket.width_e = get_num(table, "wavepacket", "width_e", c.wavepacket.width_e);
  c.wavepacket.center_x = get_num(table, "wavepacket", "center_x", c.wavepacket.center_x);

  c.ensemble.n_traj = static_cast<int>(get_num(table, "ensemble", "n_traj", c.ensemble.n_traj));
  c.ensemble.base_seed =
      static_cast<std::uint64_t>(get_num(table, "ensemble", "base_seed", 1.0));
  c.ensemble.batch = static_cast<int>(get_num(table, "ensemble", "batch", c.ensemble.batch));
  c.ensemble.n_workers =
      static_cast<int>(get_num(table, "ensemble", "n_workers", c.ensemble.n_workers));
  c.propagation.dt_nuclear = get_num(table, "ensemble", "dt_nuclear", c.propagation.dt_nuclear);
  c.propagation.dt_electronic =
      get_num(table, "ensemble", "dt_electronic", c.propagation.dt_electronic);
  const double t_max = get_num(table, "ensemble", "t_max", 400.0);
  c.propagation.n_steps = static_cast<int>(std::lround(t_max / c.propagation.dt_nuclear));
  c.propagation.snapshot_stride =
      static_cast<int>(get_num(table, "ensemble", "snapshot_stride", c.propagation.snapshot_stride));
  c.ensemble.threshold = get_num(table, "ensemble", "threshold", c.ensemble.threshold);
  c.ensemble.t_fit_begin = get_num(table, "ensemble", "fit_begin", c.ensemble.t_fit_begin);
  c.ensemble.t_fit_end = get_num(table, "ensemble", "fit_end", c.ensemble.t_fit_end);
  c.ensemble.energy_ref = get_num(table, "ensemble", "energy_ref", c.ensemble.energy_ref);

  c.tast.g = get_num(table, "tast", "g", c.tast.g);

  c.sweep_axis = sweep_axis_from_string(get_str(table, "sweep", "axis", "lambda"));
  c.sweep_values = get_array(table, "sweep", "values", c.sweep_values);
  c.output_directory = get_str(table, "output", "directory", c.output_directory);
  return c;
}

ConfigTable RunConfig::to_table() const {
  ConfigTable t;
  t["model"]["exciton_energy"] = model.exciton_energy;
  t["model"]["cavity_energy"] = model.cavity_energy;
  t["model"]["collective_coupling"] = model.collective_coupling;
  t["model"]["n_molecules"] = static_cast<double>(model.n_molecules);
  t["model"]["n_cavity_modes"] = static_cast<double>(model.n_cavity_modes);
  t["model"]["spacing"] = model.spacing;
  t["bath"]["lambda"] = bath.lambda;
  t["bath"]["omega_f"] = bath.omega_f;
  t["bath"]["n_modes"] = static_cast<double>(bath.n_modes);
  t["thermal"]["temperature"] = thermal.temperature;
  t["self_energy"]["eta"] = self_energy.eta;
  t["self_energy"]["dark_only"] = self_energy.dark_only;
  t["self_energy"]["self_consistent"] = self_energy.self_consistent;
  t["self_energy"]["n_bath_modes"] = static_cast<double>(theory.n_bath_modes);
  t["self_energy"]["dense_points"] = static_cast<double>(theory.dense_points);
  t["self_energy"]["k_window"] = theory.k_window;
  t["wavepacket"]["lp_energy"] = wavepacket_lp_energy;
  t["wavepacket"]["center_k"] = wavepacket.center_k;
  t["wavepacket"]["width_k"] = wavepacket.width_k;
  t["wavepacket"]["width_e"] = wavepacket.width_e;
  t["wavepacket"]["center_x"] = wavepacket.center_x;
  t["ensemble"]["n_traj"] = static_cast<double>(ensemble.n_traj);
  t["ensemble"]["base_seed"] = static_cast<double>(ensemble.base_seed);
  t["ensemble"]["batch"] = static_cast<double>(ensemble.batch);
  t["ensemble"]["n_workers"] = static_cast<double>(ensemble.n_workers);
  t["ensemble"]["dt_nuclear"] = propagation.dt_nuclear;
  t["ensemble"]["dt_electronic"] = propagation.dt_electronic;
  t["ensemble"]["t_max"] = propagation.n_steps * propagation.dt_nuclear;
  t["ensemble"]["snapshot_stride"] = static_cast<double>(propagation.snapshot_stride);
  t["ensemble"]["threshold"] = ensemble.threshold;
  t["ensemble"]["fit_begin"] = ensemble.t_fit_begin;
  t["ensemble"]["fit_end"] = ensemble.t_fit_end;
  t["ensemble"]["energy_ref"] = ensemble.energy_ref;
  t["tast"]["g"] = tast.g;
  t["sweep"]["axis"] = to_string(sweep_axis);
  t["sweep"]["values"] = sweep_values;
  t["output"]["directory"] = output_directory;
  return t;
}

RunConfig apply_sweep_value(const RunConfig& base, double value) {
  RunConfig c = base;
  switch (base.sweep_axis) {
    case SweepAxis::lambda: c.bath.lambda = value; break;
    case SweepAxis::temperature: c.thermal.temperature = value; break;
    case SweepAxis::lp_energy: c.wavepacket_lp_energy = value; c.wavepacket.center_k = 0; break;
  }
  return c;
}

}  // namespace poltran
