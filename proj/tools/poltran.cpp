// poltran: band structures, phonon-renormalized group velocities, and
// Ehrenfest wavepacket transport for a lattice of emitters in a multimode
// cavity. Subcommands: bands, vg, ehrenfest, compare.
//
// Exit codes: 0 success, 1 usage/config error, 2 numerical failure,
// 3 comparison tolerance exceeded.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "poltran/config.hpp"
#include "poltran/csv.hpp"
#include "poltran/ensemble.hpp"
#include "poltran/greens.hpp"

namespace fs = std::filesystem;
using namespace poltran;

namespace {

constexpr const char* kVersion = "0.1.0";
// desk-scale guard on N * M * n_steps for the dynamics path
constexpr double kWorkBudget = 1e8;

struct CommonArgs {
  std::string config_path;
  std::string sweep_override;
  std::string out_override;
  std::optional<std::uint64_t> seed;
  std::optional<int> ntraj;
  bool force = false;
};

std::vector<double> parse_sweep_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    const std::string tok = s.substr(pos, comma - pos);
    if (!tok.empty()) {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument("bad sweep value '" + tok + "'");
    }
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty sweep list");
  return out;
}

RunConfig load_config(const CommonArgs& args) {
  RunConfig cfg = args.config_path.empty()
                      ? RunConfig{}
                      : RunConfig::from_table(parse_config_file(args.config_path));
  if (!args.sweep_override.empty()) cfg.sweep_values = parse_sweep_list(args.sweep_override);
  if (args.seed) cfg.ensemble.base_seed = *args.seed;
  if (args.ntraj) cfg.ensemble.n_traj = *args.ntraj;
  if (!args.out_override.empty()) {
    cfg.output_directory = args.out_override;
  } else if (const char* env = std::getenv("POLTRAN_OUTDIR"); env && *env) {
    cfg.output_directory = env;
  }
  cfg.validate();
  return cfg;
}

std::string hash_hex(const RunConfig& cfg) {
  // identifies the physics inputs: where the files go and how many threads
  // compute them must not change it
  ConfigTable table = cfg.to_table();
  table.erase("output");
  auto ens = table.find("ensemble");
  if (ens != table.end()) ens->second.erase("n_workers");
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(config_hash(table)));
  return buf;
}

std::map<std::string, std::string> provenance(const RunConfig& cfg) {
  return {{"config_hash", hash_hex(cfg)},
          {"seed", std::to_string(cfg.ensemble.base_seed)},
          {"sweep_axis", to_string(cfg.sweep_axis)},
          {"units", "eV, fs, nm, K"},
          {"version", kVersion}};
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.output_directory);
  return (fs::path(cfg.output_directory) / name).string();
}

std::string value_tag(const RunConfig& cfg, double value) {
  return to_string(cfg.sweep_axis) + "_" + format_sig12(value);
}

// target wavevector of the packet: explicit center_k wins, otherwise invert
// the LP band at the requested energy
double resolve_center_k(const RunConfig& cfg) {
  if (cfg.wavepacket.center_k > 0) return cfg.wavepacket.center_k;
  return lp_wavevector_for_energy(cfg.wavepacket_lp_energy, cfg.model,
                                  cfg.theory.k_window * cfg.model.k_perp());
}

int cmd_bands(const CommonArgs& args) {
  const RunConfig base = load_config(args);
  for (double value : base.sweep_values) {
    const RunConfig cfg = apply_sweep_value(base, value);
    const DiscretizedBath bath = discretize_bath(
        {.lambda = cfg.bath.lambda, .omega_f = cfg.bath.omega_f,
         .n_modes = cfg.theory.n_bath_modes});
    const KGrid grid = KGrid::dense(1e-6, cfg.theory.k_window * cfg.model.k_perp(),
                                    cfg.theory.dense_points);
    auto curve = renormalized_band(grid, cfg.model, bath, cfg.thermal, cfg.self_energy);
    renormalized_vg(curve, cfg.model);

    CsvWriter w(out_path(base, "bands_" + value_tag(base, value) + ".csv"),
                {"k_par", "E_photon", "E_UP_bare", "E_LP_bare", "E_UP_renorm",
                 "E_LP_renorm", "hopfield_LP", "gamma_LP"},
                provenance(cfg));
    for (const auto& r : curve)
      w.row({r.base.k_par, r.base.photon_energy, r.base.energy_up, r.base.energy_lp,
             r.energy_up, r.energy_lp, r.base.hopfield_lp, r.linewidth_lp});
  }
  return 0;
}

int cmd_vg(const CommonArgs& args) {
  const RunConfig base = load_config(args);
  CsvWriter w(out_path(base, "vg.csv"),
              {"sweep_value", "k_par", "lp_energy", "vg_bare", "vg_renorm_full",
               "vg_renorm_darkonly", "vg_tast"},
              provenance(base));
  for (double value : base.sweep_values) {
    const RunConfig cfg = apply_sweep_value(base, value);
    const DiscretizedBath bath = discretize_bath(
        {.lambda = cfg.bath.lambda, .omega_f = cfg.bath.omega_f,
         .n_modes = cfg.theory.n_bath_modes});
    const double k0 = resolve_center_k(cfg);
    const BandPoint bp = polariton_point(k0, cfg.model);
    const double vg_bare = bare_group_velocity(k0, Branch::lp, cfg.model);

    SelfEnergyConfig dark = cfg.self_energy;
    dark.dark_only = true;
    const double vg_dark = lp_vg_at(k0, cfg.model, bath, cfg.thermal, dark);

    // full k' sum lives on the cavity mode grid; interpolate its slope at k0
    SelfEnergyConfig full = cfg.self_energy;
    full.dark_only = false;
    auto curve = renormalized_band(KGrid::modes(cfg.model), cfg.model, bath,
                                   cfg.thermal, full);
    renormalized_vg(curve, cfg.model);
    double vg_full = curve.back().vg_lp;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
      const double ka = curve[i].base.k_par, kb = curve[i + 1].base.k_par;
      if (k0 >= ka && k0 <= kb) {
        const double t = (k0 - ka) / (kb - ka);
        vg_full = (1 - t) * curve[i].vg_lp + t * curve[i + 1].vg_lp;
        break;
      }
    }

    const double vg_tast_v = tast_vg(vg_bare, bp.dark_gap, cfg.thermal, cfg.tast);
    w.row({value, k0, bp.energy_lp, vg_bare, vg_full, vg_dark, vg_tast_v});
  }
  return 0;
}

int cmd_ehrenfest(const CommonArgs& args) {
  const RunConfig base = load_config(args);
  const double work = static_cast<double>(base.model.n_molecules) *
                      base.model.n_cavity_modes * base.propagation.n_steps;
  if (work > kWorkBudget && !args.force)
    throw std::invalid_argument(
        "run size N*M*n_steps = " + format_sig12(work) +
        " exceeds the desk-scale budget " + format_sig12(kWorkBudget) +
        "; pass --force to run anyway");

  for (double value : base.sweep_values) {
    RunConfig cfg = apply_sweep_value(base, value);
    WavepacketInit init = cfg.wavepacket;
    init.center_k = resolve_center_k(cfg);
    const EnsembleResult r = run_ensemble(cfg.model, cfg.bath, cfg.thermal, init,
                                          cfg.propagation, cfg.ensemble);

    const std::string tag = value_tag(base, value);
    auto prov = provenance(cfg);

    {
      CsvWriter w(out_path(base, "density_" + tag + ".csv"), {"t", "x", "rho"}, prov);
      for (std::size_t f = 0; f < r.density.size(); ++f)
        for (long i = 0; i < r.density[f].size(); ++i)
          w.row({r.times[f], r.x[static_cast<std::size_t>(i)], r.density[f][i]});
    }
    {
      CsvWriter w(out_path(base, "front_" + tag + ".csv"), {"t", "x_front"}, prov);
      for (std::size_t f = 0; f < r.times.size(); ++f)
        w.row({r.times[f], r.wavefront.front[f]});
    }
    {
      CsvWriter w(out_path(base, "summary_" + tag + ".csv"),
                  {"sweep_value", "vg_fit", "vg_err", "r_squared", "n_traj",
                   "n_failed", "base_seed", "max_norm_drift", "max_energy_drift",
                   "leakage", "truncated"},
                  prov);
      w.row({value, r.vg_fit, r.vg_stderr, r.wavefront.fit.r_squared,
             static_cast<double>(r.n_traj), static_cast<double>(r.n_failed),
             static_cast<double>(r.base_seed), r.max_norm_drift, r.max_energy_drift,
             r.wavepacket_leakage, r.wavefront.truncated ? 1.0 : 0.0});
    }
    std::fprintf(stderr, "ehrenfest %s: vg_fit = %s +- %s nm/fs (%d traj)\n",
                 tag.c_str(), format_sig12(r.vg_fit).c_str(),
                 format_sig12(r.vg_stderr).c_str(), r.n_traj);
  }
  return 0;
}

int cmd_compare(const std::string& theory_path, const std::vector<std::string>& summaries,
                const std::string& out_dir, double tolerance) {
  const CsvTable theory = read_csv(theory_path);
  const int tv = theory.column_index("sweep_value");
  const int tdark = theory.column_index("vg_renorm_darkonly");
  if (tv < 0 || tdark < 0)
    throw std::invalid_argument("compare: " + theory_path + " is not a vg table");
  if (theory.rows.empty())
    throw std::invalid_argument("compare: theory table " + theory_path + " has no rows");

  std::string dir = out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("POLTRAN_OUTDIR");
    dir = env && *env ? env : "out";
  }
  fs::create_directories(dir);
  CsvWriter w((fs::path(dir) / "compare.csv").string(),
              {"sweep_value", "vg_theory", "vg_ensemble", "rel_deviation"},
              {{"theory", theory_path},
               {"tolerance", format_sig12(tolerance)},
               {"version", kVersion}});

  bool any_over = false;
  bool any_rows = false;
  for (const auto& path : summaries) {
    const CsvTable s = read_csv(path);
    const int sv = s.column_index("sweep_value");
    const int svg = s.column_index("vg_fit");
    if (sv < 0 || svg < 0)
      throw std::invalid_argument("compare: " + path + " is not an ensemble summary");
    if (s.rows.empty())
      throw std::invalid_argument("compare: ensemble summary " + path + " is empty");
    const auto ta = theory.provenance.find("sweep_axis");
    const auto sa = s.provenance.find("sweep_axis");
    if (ta != theory.provenance.end() && sa != s.provenance.end() && ta->second != sa->second)
      throw std::invalid_argument("compare: sweep axis mismatch between " + theory_path +
                                  " (" + ta->second + ") and " + path + " (" + sa->second + ")");

    for (const auto& row : s.rows) {
      const double value = row[static_cast<std::size_t>(sv)];
      const double vg_sim = row[static_cast<std::size_t>(svg)];
      const double* vg_th = nullptr;
      for (const auto& trow : theory.rows) {
        const double t = trow[static_cast<std::size_t>(tv)];
        if (std::abs(t - value) <= 1e-9 * std::max(1.0, std::abs(value))) {
          vg_th = &trow[static_cast<std::size_t>(tdark)];
          break;
        }
      }
      if (!vg_th)
        throw std::invalid_argument("compare: no theory row for sweep value " +
                                    format_sig12(value) + " from " + path);
      const double dev = std::abs(vg_sim - *vg_th) / std::abs(*vg_th);
      w.row({value, *vg_th, vg_sim, dev});
      any_over = any_over || dev > tolerance;
      any_rows = true;
    }
  }
  if (!any_rows) throw std::invalid_argument("compare: no ensemble rows to compare");
  return any_over ? 3 : 0;
}

void add_common(CLI::App* app, CommonArgs& args, bool dynamics) {
  app->add_option("--config", args.config_path, "run configuration file");
  app->add_option("--sweep", args.sweep_override, "comma-separated sweep values");
  app->add_option("--out", args.out_override,
                  "output directory (overrides POLTRAN_OUTDIR and the config)");
  if (dynamics) {
    app->add_option("--seed", args.seed, "ensemble base seed");
    app->add_option("--ntraj", args.ntraj, "trajectory count");
    app->add_flag("--force", args.force, "bypass the desk-scale work guard");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polariton transport: bands, renormalized group velocities, "
               "Ehrenfest wavepacket dynamics"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  CommonArgs bands_args, vg_args, eh_args;
  CLI::App* bands = app.add_subcommand("bands", "band structure tables per sweep value");
  add_common(bands, bands_args, false);
  CLI::App* vg = app.add_subcommand("vg", "group-velocity table over the sweep");
  add_common(vg, vg_args, false);
  CLI::App* eh = app.add_subcommand("ehrenfest", "wavepacket ensemble dynamics");
  add_common(eh, eh_args, true);

  std::string theory_path, compare_out;
  std::vector<std::string> summary_paths;
  double tolerance = 0.15;
  CLI::App* cmp = app.add_subcommand("compare", "join theory and ensemble results");
  cmp->add_option("--theory", theory_path, "vg table from the vg subcommand")->required();
  cmp->add_option("--ensemble", summary_paths, "ensemble summary CSVs")->required();
  cmp->add_option("--out", compare_out, "output directory");
  cmp->add_option("--tolerance", tolerance, "relative deviation limit (default 0.15)");

  try {
    app.parse(argc, argv);
    if (bands->parsed()) return cmd_bands(bands_args);
    if (vg->parsed()) return cmd_vg(vg_args);
    if (eh->parsed()) return cmd_ehrenfest(eh_args);
    return cmd_compare(theory_path, summary_paths, compare_out, tolerance);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems map to exit 1
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::runtime_error& e) {
    // config/file problems are usage errors; anything else is numerical
    const std::string what = e.what();
    std::fprintf(stderr, "error: %s\n", what.c_str());
    return what.rfind("config:", 0) == 0 || what.rfind("csv:", 0) == 0 ? 1 : 2;
  }
}
