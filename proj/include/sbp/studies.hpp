#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sbp/error.hpp"
#include "sbp/functionals.hpp"
#include "sbp/solver.hpp"

namespace sbp {

// ---------------------------------------------------------------------------
// a → 0 sweep

/// One screening length of the sweep, compared against the a = 0 solution.
struct SweepEntry {
  double a = 0.0;
  double energy = 0.0;           ///< cₐ
  double gap = 0.0;              ///< |cₐ − c₀|
  double dirichlet = 0.0;        ///< ‖∇uₐ‖²
  double projection_t = 1.0;     ///< t of the a = 0 solution projected onto the manifold at a
  double projection_bound = 0.0; ///< Iₐ at that projection, an upper bound for cₐ
  double l2_distance = 0.0;      ///< ‖uₐ − u₀‖₂
  double dirichlet_distance = 0.0;  ///< ‖∇(uₐ − u₀)‖₂
  double residual_relative = 0.0;
  double nehari_relative = 0.0;
  double pohozaev_relative = 0.0;
  double manifold_relative = 0.0;
  std::size_t iters = 0;
  bool converged = false;
};

struct SweepReport {
  ModelParams base;  ///< q and p of the sweep; a unused
  std::vector<SweepEntry> entries;  ///< in the order of a_list (decreasing a)
  std::vector<SolveReport> reports;  ///< per-entry solves, then the a = 0 solve last
  double c0 = 0.0;
  bool c0_converged = false;
  double dirichlet_bound = 0.0;  ///< ((2p − 3)/(p − 3)) c₀
  bool monotone_ok = false;       ///< cₐ nonincreasing in a
  bool bounded_ok = false;        ///< cₐ ≤ c₀ + energy_tol for all entries
  bool gap_decreasing_ok = false; ///< |cₐ − c₀| strictly decreasing along the list
  bool dirichlet_bounded_ok = false;  ///< ‖∇uₐ‖² ≤ dirichlet_bound + dirichlet_tol for all entries
  bool all_converged = false;
  double energy_tol = 1e-8;
  double dirichlet_tol = 1e-6;
  /// Gap shrinkage is an empirical check; the limit theorem guarantees weak convergence only.
  std::string note;

  bool ok() const {
    return all_converged && monotone_ok && bounded_ok && gap_decreasing_ok && dirichlet_bounded_ok;
  }
};

namespace detail {

inline double relative(double value, double scale) { return scale > 0.0 ? std::abs(value) / scale : std::abs(value); }

}  // namespace detail

/**
 * @brief Solves along a decreasing list of screening lengths, each warm-started
 * from the previous solution, then solves a = 0 warm-started from the last.
 *
 * A non-converged solve does not stop the sweep; it clears all_converged.
 */
inline SweepReport sweep_a(const std::vector<double>& a_list, double q, double p, const GridPtr& grid,
                           const SolverConfig& cfg, double energy_tol = 1e-8, double dirichlet_tol = 1e-6) {
  detail::require(!a_list.empty(), "sweep_a: a_list must not be empty");
  for (std::size_t k = 0; k < a_list.size(); ++k) {
    detail::require(std::isfinite(a_list[k]) && a_list[k] > 0.0, "sweep_a: every a must be > 0");
    if (k > 0) detail::require(a_list[k] < a_list[k - 1], "sweep_a: a_list must be strictly decreasing");
  }
  ModelParams{a_list.front(), q, p}.validate_for_solver();

  SweepReport out;
  out.base = ModelParams{0.0, q, p};
  out.energy_tol = energy_tol;
  out.dirichlet_tol = dirichlet_tol;
  out.note =
      "energy gap shrinkage is an empirical check; the limit theorem only asserts weak convergence of u_a";

  std::optional<RadialField> warm;
  for (double a : a_list) {
    SolveReport r = solve_ground_state(ModelParams{a, q, p}, grid, cfg, warm);
    if (r.converged) warm = r.u;
    out.reports.push_back(std::move(r));
  }
  SolveReport sp = solve_sp_ground_state(q, p, grid, cfg, warm);
  out.c0 = sp.energy_c;
  out.c0_converged = sp.converged;
  out.dirichlet_bound = (2.0 * p - 3.0) / (p - 3.0) * out.c0;

  out.all_converged = sp.converged;
  for (std::size_t k = 0; k < a_list.size(); ++k) {
    const SolveReport& r = out.reports[k];
    const FunctionalBreakdown& b = r.breakdown;
    SweepEntry e;
    e.a = a_list[k];
    e.energy = r.energy_c;
    e.gap = std::abs(r.energy_c - out.c0);
    e.dirichlet = b.dirichlet;
    const RadialField diff = axpy(r.u, -1.0, sp.u);
    e.l2_distance = std::sqrt(radial_integral(diff * diff));
    e.dirichlet_distance = std::sqrt(std::max(dirichlet_energy(diff), 0.0));
    e.residual_relative = r.residual_relative;
    e.nehari_relative = detail::relative(b.nehari, b.nehari_scale());
    e.pohozaev_relative = detail::relative(b.pohozaev, b.pohozaev_scale());
    e.manifold_relative = detail::relative(b.manifold, b.manifold_scale());
    e.iters = r.iters;
    e.converged = r.converged;
    if (sp.converged) {
      try {
        const UpperBound ub = upper_bound_check(sp, ModelParams{e.a, q, p}, cfg.t_scan, cfg.tol_root);
        e.projection_t = ub.t_star;
        e.projection_bound = ub.bound;
      } catch (const std::exception&) {
        e.projection_t = std::nan("");
        e.projection_bound = std::nan("");
      }
    }
    out.all_converged = out.all_converged && r.converged;
    out.entries.push_back(e);
  }
  out.reports.push_back(std::move(sp));

  out.monotone_ok = out.bounded_ok = out.gap_decreasing_ok = out.dirichlet_bounded_ok = true;
  for (std::size_t k = 0; k < out.entries.size(); ++k) {
    const SweepEntry& e = out.entries[k];
    out.bounded_ok = out.bounded_ok && e.energy <= out.c0 + energy_tol;
    out.dirichlet_bounded_ok = out.dirichlet_bounded_ok && e.dirichlet <= out.dirichlet_bound + dirichlet_tol;
    if (k > 0) {
      // a decreases along the list, so cₐ may only grow
      out.monotone_ok = out.monotone_ok && e.energy >= out.entries[k - 1].energy;
      out.gap_decreasing_ok = out.gap_decreasing_ok && e.gap < out.entries[k - 1].gap;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// nonexistence sign scans

/// Which signs a sample at exponent p is expected to show.
struct ExpectedSigns {
  bool high_negative = false;   ///< p ≥ 6
  bool low_positive = false;    ///< p < 12/7
  bool radial_positive = false; ///< p ≤ 2

  bool any() const { return high_negative || low_positive || radial_positive; }
};

inline ExpectedSigns expected_signs(double p) {
  return {p >= 6.0, p < 12.0 / 7.0, p <= 2.0};
}

struct GaussianBump {
  double center = 0.0;
  double width = 1.0;
  double amplitude = 0.0;
};

struct ScanSample {
  double p = 0.0;
  std::size_t index = 0;
  std::vector<GaussianBump> bumps;
  NonexistenceCombos combos;
  ExpectedSigns checked;
  bool violated = false;
};

struct ScanReport {
  std::vector<double> p_values;
  std::size_t samples_per_p = 0;
  double a = 1.0;
  double q = 1.0;
  std::uint64_t rng_seed = 0;
  std::vector<ScanSample> samples;  ///< p-major order
  std::vector<std::size_t> violations_per_p;
  std::size_t violations = 0;
  std::size_t unchecked = 0;  ///< samples at exponents with no asserted sign

  bool ok() const { return violations == 0; }
};

/// Profile family of the scan: 1 to 4 Gaussians in r.
struct ScanEnsemble {
  double center_max = 6.0;
  double width_min = 0.2;
  double width_max = 4.0;
  std::size_t max_bumps = 4;
};

namespace detail {

inline std::vector<GaussianBump> draw_bumps(std::mt19937_64& rng, const ScanEnsemble& ens) {
  std::uniform_int_distribution<std::size_t> count(1, ens.max_bumps);
  std::uniform_real_distribution<double> center(0.0, ens.center_max);
  std::uniform_real_distribution<double> log_width(std::log(ens.width_min), std::log(ens.width_max));
  std::uniform_real_distribution<double> amplitude(-1.0, 1.0);
  std::vector<GaussianBump> bumps(count(rng));
  for (auto& b : bumps) {
    b.center = center(rng);
    b.width = std::exp(log_width(rng));
    b.amplitude = amplitude(rng);
  }
  // at least one amplitude bounded away from zero
  if (std::none_of(bumps.begin(), bumps.end(), [](const GaussianBump& b) { return std::abs(b.amplitude) >= 0.05; })) {
    bumps.front().amplitude = bumps.front().amplitude < 0.0 ? -1.0 : 1.0;
  }
  return bumps;
}

inline RadialField bumps_field(const GridPtr& grid, const std::vector<GaussianBump>& bumps) {
  return RadialField::sample(grid, [&bumps](double r) {
    double s = 0.0;
    for (const auto& b : bumps) {
      const double z = (r - b.center) / b.width;
      s += b.amplitude * std::exp(-z * z);
    }
    return s;
  });
}

}  // namespace detail

/// Default scan grid: uniform, fine enough for the narrowest bump, wide enough for the widest.
inline GridPtr default_scan_grid() { return build_grid(1024, 24.0, Spacing::uniform); }

/**
 * @brief Evaluates the nonexistence combinations on random radial profiles.
 *
 * Comparisons with zero are strict. The sequence of profiles depends only on
 * rng_seed, n_samples and the ensemble, so identical seeds give identical reports.
 */
inline ScanReport nonexistence_scan(const std::vector<double>& p_values, double a, double q, std::size_t n_samples,
                                    std::uint64_t rng_seed, const GridPtr& grid = default_scan_grid(),
                                    const ScanEnsemble& ens = {}) {
  detail::require(n_samples >= 1, "nonexistence_scan: n_samples must be >= 1");
  detail::require(!p_values.empty(), "nonexistence_scan: p_values must not be empty");
  detail::require(ens.max_bumps >= 1 && ens.width_min > 0.0 && ens.width_max >= ens.width_min && ens.center_max >= 0.0,
                  "nonexistence_scan: invalid ensemble");
  for (double p : p_values) ModelParams{a, q, p}.validate();
  detail::require(a > 0.0, "nonexistence_scan: a must be > 0");

  ScanReport out;
  out.p_values = p_values;
  out.samples_per_p = n_samples;
  out.a = a;
  out.q = q;
  out.rng_seed = rng_seed;
  out.violations_per_p.assign(p_values.size(), 0);

  std::mt19937_64 rng(rng_seed);
  for (std::size_t k = 0; k < p_values.size(); ++k) {
    const ModelParams params{a, q, p_values[k]};
    for (std::size_t s = 0; s < n_samples; ++s) {
      ScanSample smp;
      smp.p = params.p;
      smp.index = s;
      smp.bumps = detail::draw_bumps(rng, ens);
      smp.checked = expected_signs(params.p);
      smp.combos = nonexistence_combos(detail::bumps_field(grid, smp.bumps), params);
      const auto& c = smp.combos;
      smp.violated = (smp.checked.high_negative && !(c.d_high < 0.0)) ||
                     (smp.checked.low_positive && !(c.d_low > 0.0)) ||
                     (smp.checked.radial_positive && !(c.d_radial > 0.0));
      if (smp.violated) ++out.violations_per_p[k];
      if (!smp.checked.any()) ++out.unchecked;
      out.samples.push_back(std::move(smp));
    }
    out.violations += out.violations_per_p[k];
  }
  return out;
}

// ---------------------------------------------------------------------------
// identity audit

struct AuditRow {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct AuditTable {
  ModelParams params;
  std::vector<AuditRow> rows;

  bool ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const AuditRow& r) { return r.pass; });
  }
};

/// Tolerances of the audit rows.
struct AuditTolerances {
  double identity = 1e-5;  ///< Nehari, Pohozaev, manifold; relative to the sum of |terms|
  double potential = 1e-3; ///< potential-norm identities, limited by numerical derivatives of φ
};

/**
 * @brief Re-evaluates the five identities of a converged report from its profile.
 *
 * Rows: Nehari, Pohozaev, manifold, energy norm of φ, ‖Δφ‖². At a = 0 the last
 * two become ‖∇φ‖² = 4πV and ‖Δφ‖² = 16π² ‖u²‖², the Poisson-limit forms.
 */
inline AuditTable identity_audit(const SolveReport& report, const AuditTolerances& tol = {}) {
  if (!report.converged) throw UndefinedInputError("identity_audit: report is not converged");
  if (report.u.is_zero()) throw UndefinedInputError("identity_audit: report holds the zero field");
  const ModelParams& pr = report.params;
  const FunctionalBreakdown b = evaluate_any(report.u, pr);

  AuditTable t;
  t.params = pr;
  auto add = [&t](std::string name, double residual, double tolerance) {
    t.rows.push_back({std::move(name), residual, tolerance, residual < tolerance});
  };
  add("nehari", detail::relative(b.nehari, b.nehari_scale()), tol.identity);
  add("pohozaev", detail::relative(b.pohozaev, b.pohozaev_scale()), tol.identity);
  add("manifold", detail::relative(b.manifold, b.manifold_scale()), tol.identity);
  if (pr.a > 0.0) {
    add("a_norm", anorm_identity_residual(report.u, pr.a), tol.potential);
    add("laplacian_phi", laplacian_identity_residual(report.u, pr.a), tol.potential);
  } else {
    const double pi = std::numbers::pi;
    const RadialField rho = report.u * report.u;
    const RadialField phi = potential(KernelKind::coulomb(), rho);
    const PotentialNorms nrm = potential_norms(phi);
    const double v_target = 4.0 * pi * radial_integral(phi * rho);
    const double l_target = 16.0 * pi * pi * radial_integral(rho * rho);
    add("a_norm", std::abs(nrm.grad_sq - v_target) / v_target, tol.potential);
    add("laplacian_phi", std::abs(nrm.lap_sq - l_target) / l_target, tol.potential);
  }
  return t;
}

}  // namespace sbp
