#include "poltran/greens.hpp"

#include <cmath>
#include <stdexcept>

namespace poltran {

namespace {

std::vector<double> occupations(const DiscretizedBath& bath, const ThermalState& thermal) {
  std::vector<double> n(bath.size());
  for (std::size_t a = 0; a < bath.size(); ++a)
    n[a] = bose_einstein(bath.omega[a], thermal);
  return n;
}

double kernel_real(double delta, double e_ph, double n, double eta) {
  const double dm = delta - e_ph;
  const double dp = delta + e_ph;
  return (1.0 + n) * dm / (dm * dm + eta * eta) + n * dp / (dp * dp + eta * eta);
}

double kernel_imag(double delta, double e_ph, double n, double eta) {
  const double dm = delta - e_ph;
  const double dp = delta + e_ph;
  return -eta * ((1.0 + n) / (dm * dm + eta * eta) + n / (dp * dp + eta * eta));
}

// LP closed form as printed: eta only on the (e_ph - gap) pole.
double kernel_lp_dark(double gap, double e_ph, double n, double eta) {
  const double dm = e_ph - gap;
  return n * dm / (dm * dm + eta * eta) - (1.0 + n) / (e_ph + gap);
}

struct SigmaParts {
  double real = 0;
  double imag = 0;
};

// On-shell self-energy divided by the matter fraction zeta^2_{mu k};
// energy is the evaluation energy of the mu-branch state.
SigmaParts sigma_over_zeta(double energy, Branch branch, const BandPoint& /*unused*/,
                           const std::vector<BandPoint>& mode_points,
                           const ModelParams& params, const DiscretizedBath& bath,
                           const std::vector<double>& occ, const ThermalState& /*thermal*/,
                           const SelfEnergyConfig& cfg) {
  SigmaParts out;
  const double e0 = params.exciton_energy;
  if (cfg.dark_only) {
    for (std::size_t a = 0; a < bath.size(); ++a) {
      const double w2c2 = 2.0 * bath.coupling[a] * bath.coupling[a];
      if (branch == Branch::lp) {
        out.real += w2c2 * kernel_lp_dark(e0 - energy, bath.omega[a], occ[a], cfg.eta);
      } else {
        out.real += w2c2 * kernel_real(energy - e0, bath.omega[a], occ[a], cfg.eta);
      }
      out.imag += w2c2 * kernel_imag(energy - e0, bath.omega[a], occ[a], cfg.eta);
    }
    return out;
  }

  // Full sum over nu, k' with explicit 1/N weights; dark states enter as the
  // (N - M)-fold degenerate level at the exciton energy.
  const double inv_n = 1.0 / static_cast<double>(params.n_molecules);
  for (std::size_t a = 0; a < bath.size(); ++a) {
    const double w2c2 = 2.0 * bath.coupling[a] * bath.coupling[a];
    double re = 0, im = 0;
    for (const BandPoint& q : mode_points) {
      if (cfg.include_up) {
        re += q.zeta_up_sq * kernel_real(energy - q.energy_up, bath.omega[a], occ[a], cfg.eta);
        im += q.zeta_up_sq * kernel_imag(energy - q.energy_up, bath.omega[a], occ[a], cfg.eta);
      }
      if (cfg.include_lp) {
        re += q.hopfield_lp * kernel_real(energy - q.energy_lp, bath.omega[a], occ[a], cfg.eta);
        im += q.hopfield_lp * kernel_imag(energy - q.energy_lp, bath.omega[a], occ[a], cfg.eta);
      }
    }
    if (cfg.include_dark) {
      const double n_dark = static_cast<double>(params.n_molecules - params.n_cavity_modes);
      re += n_dark * kernel_real(energy - e0, bath.omega[a], occ[a], cfg.eta);
      im += n_dark * kernel_imag(energy - e0, bath.omega[a], occ[a], cfg.eta);
    }
    out.real += w2c2 * re * inv_n;
    out.imag += w2c2 * im * inv_n;
  }
  return out;
}

double solve_on_shell(double bare, double zeta_sq, Branch branch, const BandPoint& point,
                      const std::vector<BandPoint>& mode_points, const ModelParams& params,
                      const DiscretizedBath& bath, const std::vector<double>& occ,
                      const ThermalState& thermal, const SelfEnergyConfig& cfg,
                      SigmaParts& sigma) {
  sigma = sigma_over_zeta(bare, branch, point, mode_points, params, bath, occ, thermal, cfg);
  if (!cfg.self_consistent) return bare + zeta_sq * sigma.real;

  double energy = bare + zeta_sq * sigma.real;
  for (int it = 0; it < cfg.sc_max_iterations; ++it) {
    sigma = sigma_over_zeta(energy, branch, point, mode_points, params, bath, occ, thermal, cfg);
    const double next = (1.0 - cfg.sc_damping) * energy +
                        cfg.sc_damping * (bare + zeta_sq * sigma.real);
    if (std::abs(next - energy) < cfg.sc_tolerance) return next;
    energy = next;
  }
  return energy;
}

}  // namespace

double polarizability(double e_mu, double e_nu, double e_phonon,
                      const ThermalState& thermal, double eta) {
  const double n = bose_einstein(e_phonon, thermal);
  return kernel_real(e_mu - e_nu, e_phonon, n, eta);
}

double polarizability_imag(double e_mu, double e_nu, double e_phonon,
                           const ThermalState& thermal, double eta) {
  const double n = bose_einstein(e_phonon, thermal);
  return kernel_imag(e_mu - e_nu, e_phonon, n, eta);
}

double dark_polarizability_lp(const BandPoint& point, double e_phonon,
                              const ThermalState& thermal, double eta) {
  if (!(point.dark_gap > 0)) throw std::domain_error("dark_gap must be > 0");
  const double n = bose_einstein(e_phonon, thermal);
  return kernel_lp_dark(point.dark_gap, e_phonon, n, eta);
}

std::vector<RenormalizedBandPoint> renormalized_band(
    const KGrid& grid, const ModelParams& params, const DiscretizedBath& bath,
    const ThermalState& thermal, const SelfEnergyConfig& cfg) {
  if (grid.size() == 0) throw std::invalid_argument("renormalized_band: empty grid");
  if (bath.size() == 0) throw std::invalid_argument("renormalized_band: empty bath");
  if (!cfg.dark_only && !grid.is_mode_grid())
    throw std::invalid_argument(
        "renormalized_band: full k' sum needs the integer mode grid (1/N weights undefined "
        "on a dense grid)");
  if (!(cfg.eta > 0)) throw std::invalid_argument("renormalized_band: eta must be > 0");

  const std::vector<double> occ = occupations(bath, thermal);

  std::vector<BandPoint> mode_points;
  if (!cfg.dark_only) {
    mode_points.reserve(grid.size());
    for (double k : grid.k_par) mode_points.push_back(polariton_point(k, params));
  }

  std::vector<RenormalizedBandPoint> curve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    RenormalizedBandPoint& r = curve[i];
    r.base = grid.is_mode_grid() && !cfg.dark_only ? mode_points[i]
                                                   : polariton_point(grid.k_par[i], params);
    SigmaParts sig;
    r.energy_lp = solve_on_shell(r.base.energy_lp, r.base.hopfield_lp, Branch::lp, r.base,
                                 mode_points, params, bath, occ, thermal, cfg, sig);
    r.correction_lp = r.energy_lp - r.base.energy_lp;
    r.linewidth_lp = r.base.hopfield_lp * sig.imag;
    r.energy_up = solve_on_shell(r.base.energy_up, r.base.zeta_up_sq, Branch::up, r.base,
                                 mode_points, params, bath, occ, thermal, cfg, sig);
    r.correction_up = r.energy_up - r.base.energy_up;
    r.linewidth_up = r.base.zeta_up_sq * sig.imag;
  }
  return curve;
}

void renormalized_vg(std::vector<RenormalizedBandPoint>& curve, const ModelParams& params) {
  const std::size_t n = curve.size();
  if (n < 2) throw std::invalid_argument("renormalized_vg: need >= 2 points");
  const double dk = curve[1].base.k_par - curve[0].base.k_par;
  if (!(dk > 0)) throw std::invalid_argument("renormalized_vg: curve must be sorted in k");

  for (std::size_t i = 0; i < n; ++i) {
    curve[i].vg_bare_up = bare_group_velocity(curve[i].base.k_par, Branch::up, params);
    curve[i].vg_bare_lp = bare_group_velocity(curve[i].base.k_par, Branch::lp, params);
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i == n - 1 ? n - 1 : i + 1;
    const double span = curve[hi].base.k_par - curve[lo].base.k_par;
    curve[i].vg_up = (curve[hi].energy_up - curve[lo].energy_up) / (span * units::hbar);
    curve[i].vg_lp = (curve[hi].energy_lp - curve[lo].energy_lp) / (span * units::hbar);
  }
}

double tast_vg(double vg_bare, double dark_gap, const ThermalState& thermal,
               const TastParams& tast) {
  if (!(dark_gap > 0)) throw std::domain_error("tast_vg: dark_gap must be > 0");
  return vg_bare / (1.0 + tast.g * std::exp(-thermal.beta() * dark_gap));
}

double lp_vg_at(double k0, const ModelParams& params, const DiscretizedBath& bath,
                const ThermalState& thermal, const SelfEnergyConfig& cfg, double dk) {
  KGrid stencil = KGrid::dense(k0 - 2 * dk, k0 + 2 * dk, 5);
  auto curve = renormalized_band(stencil, params, bath, thermal, cfg);
  renormalized_vg(curve, params);
  return curve[2].vg_lp;
}

}  // namespace poltran
