#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sbp/error.hpp"
#include "sbp/fibering.hpp"
#include "sbp/functionals.hpp"
#include "sbp/interpolation.hpp"

namespace sbp {

enum class SeedProfile { gaussian, bump, file };

inline std::string_view to_string(SeedProfile s) {
  switch (s) {
    case SeedProfile::gaussian: return "gaussian";
    case SeedProfile::bump: return "bump";
    case SeedProfile::file: return "file";
  }
  return "?";
}

inline SeedProfile seed_profile_from_string(std::string_view s) {
  if (s == "gaussian") return SeedProfile::gaussian;
  if (s == "bump") return SeedProfile::bump;
  if (s == "file") return SeedProfile::file;
  throw ParameterError("unknown seed profile '" + std::string(s) + "' (expected gaussian|bump|file)");
}

struct SolverConfig {
  std::size_t max_iters = 4000;
  double tol_residual = 1e-6;   ///< on ‖EL residual‖₂ / ‖u‖₂
  double tol_identity = 1e-5;   ///< on |Jₐ| / Σ|terms|
  double tol_root = 1e-10;      ///< on |ζ'(t)| / Σ|terms|
  double step0 = 1.0;
  double shrink = 0.5;
  double armijo = 1e-4;
  ScanWindow t_scan;
  SeedProfile seed_profile = SeedProfile::gaussian;
  std::optional<RadialField> seed_field;  ///< required for SeedProfile::file
  bool exploratory_p = false;  ///< also accept 3 < p ≤ 4, without convergence guarantee
  std::size_t polish_iters = 8;  ///< Newton steps on the discrete equation after descent; 0 disables
  double polish_start = 1e-2;    ///< relative residual below which polishing may start

  void validate() const {
    detail::require(max_iters >= 1, "solver: max_iters must be >= 1");
    detail::require(tol_residual > 0.0 && tol_identity > 0.0 && tol_root > 0.0, "solver: tolerances must be > 0");
    detail::require(step0 > 0.0 && std::isfinite(step0), "solver: step0 must be > 0");
    detail::require(shrink > 0.0 && shrink < 1.0, "solver: shrink must be in (0,1)");
    detail::require(armijo > 0.0 && armijo < 1.0, "solver: armijo must be in (0,1)");
    detail::require(polish_start > 0.0, "solver: polish_start must be > 0");
    t_scan.validate();
    detail::require(seed_profile != SeedProfile::file || seed_field.has_value(),
                    "solver: seed_profile=file needs an input profile");
  }
};

enum class SolveStatus { converged, max_iters, stalled, projection_failure, external };

inline std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iters: return "max_iters";
    case SolveStatus::stalled: return "stalled";
    case SolveStatus::projection_failure: return "projection_failure";
    case SolveStatus::external: return "external";
  }
  return "?";
}

struct IterationRecord {
  double energy = 0.0;
  double residual = 0.0;  ///< ‖EL residual‖₂ / ‖u‖₂
};

struct SolveReport {
  SolveReport(RadialField u0, RadialField phi0, ModelParams p, SolverConfig c)
      : u(std::move(u0)), phi(std::move(phi0)), params(p), config(std::move(c)) {}

  RadialField u;
  RadialField phi;
  ModelParams params;
  SolverConfig config;
  double energy_c = 0.0;
  FunctionalBreakdown breakdown;
  double residual_norm = 0.0;     ///< ‖EL residual‖₂
  double residual_relative = 0.0;  ///< residual_norm / ‖u‖₂
  FiberingResult fibering;
  std::size_t iters = 0;         ///< accepted descent steps
  std::size_t polish_iters = 0;  ///< Newton steps taken after descent
  bool converged = false;
  SolveStatus status = SolveStatus::max_iters;
  bool truncation_ok = false;
  double tail_ratio = 0.0;  ///< max |u| on [0.9 r_max, r_max) over max |u|
  double min_u = 0.0;
  double max_phi = 0.0;
  bool exploratory = false;
  std::vector<IterationRecord> history;         ///< descent iterates, energies non-increasing
  std::vector<IterationRecord> polish_history;  ///< Newton iterates
  std::vector<std::string> warnings;
};

namespace detail {

// u(r_max) = 0, and u(0), which carries no quadrature weight, minimizes ‖∇u‖²
// given the other nodes. On edge-sum grids u(0) does not enter the energy and
// is set by the even quadratic through the next two nodes.
inline void fix_endpoints(std::vector<double>& v, const RadialGrid& g) {
  const std::size_t n = v.size();
  v[n - 1] = 0.0;
  if (g.node(0) != 0.0) return;
  if (g.mapped()) {
    // δu_k = α_k u_0 + β_k on the three faces whose stencil reaches node 0
    double num = 0.0, den = 0.0;
    const double keep = v[0];
    v[0] = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      const double alpha = -stagger_coef[k];
      const double beta = staggered_diff(v, k);
      const double w = face_weight(g, k);
      num += w * alpha * beta;
      den += w * alpha * alpha;
    }
    v[0] = den > 0.0 ? -num / den : keep;
  } else {
    const double a = g.node(1) * g.node(1), b = g.node(2) * g.node(2);
    v[0] = (b * v[1] - a * v[2]) / (b - a);
  }
}

inline RadialField with_fixed_endpoints(const RadialField& u) {
  std::vector<double> v(u.values().begin(), u.values().end());
  fix_endpoints(v, u.grid());
  return RadialField(u.grid_ptr(), std::move(v));
}

// κ_k with Σ_k κ_k (u_{k+1} − u_k)² ≈ ∫ r² u_r² dr; the face at the origin is
// dropped because u(0) is eliminated.
inline double two_point_face(const RadialGrid& g, std::size_t k) {
  if (k == 0) return 0.0;
  if (g.mapped()) return face_weight(g, k);
  return g.node(k) * g.node(k + 1) / g.width(k);
}

/**
 * Solves (-Δ₂ + q²φ) d = -R on the free nodes 1..n-2, where Δ₂ is the
 * three-point Laplacian of the two-point Dirichlet form. The operator is
 * symmetric positive definite in the quadrature inner product, so d is a
 * descent direction.
 */
inline RadialField sobolev_direction(const RadialField& residual, const RadialField& phi, double q2) {
  const auto& g = residual.grid();
  const std::size_t n = residual.size();
  const std::size_t m = n - 2;
  std::vector<double> lower(m), diag(m), upper(m), rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = k + 1;
    const double scale = g.weight(i) * g.node(i) * g.node(i);
    const double cl = two_point_face(g, i - 1) / scale;
    const double cr = two_point_face(g, i) / scale;
    lower[k] = -cl;
    upper[k] = -cr;
    diag[k] = cl + cr + q2 * std::max(phi[i], 0.0);
    rhs[k] = -residual[i];
  }
  // Thomas algorithm
  for (std::size_t k = 1; k < m; ++k) {
    const double w = lower[k] / diag[k - 1];
    diag[k] -= w * upper[k - 1];
    rhs[k] -= w * rhs[k - 1];
  }
  std::vector<double> d(n, 0.0);
  d[m] = rhs[m - 1] / diag[m - 1];
  for (std::size_t k = m - 1; k-- > 0;) d[k + 1] = (rhs[k] - upper[k] * d[k + 2]) / diag[k];
  fix_endpoints(d, g);
  return RadialField(residual.grid_ptr(), std::move(d));
}

inline double l2_norm(const RadialField& f) { return std::sqrt(radial_integral(f * f)); }

inline RadialField seed_field(const GridPtr& grid, const SolverConfig& cfg) {
  switch (cfg.seed_profile) {
    case SeedProfile::gaussian: return RadialField::sample(grid, [](double r) { return std::exp(-r * r); });
    case SeedProfile::bump:
      return RadialField::sample(grid, [](double r) { return 1.0 / ((1.0 + r * r) * (1.0 + r * r)); });
    case SeedProfile::file: {
      const RadialField& src = *cfg.seed_field;
      if (src.grid() == *grid) return src;
      const MonotoneCubic interp(src.grid().nodes(), src.values(), src.grid().node(0) == 0.0);
      const double rm = src.grid().r_max();
      return RadialField::sample(grid, [&](double r) { return r > rm ? 0.0 : interp(r); });
    }
  }
  throw ParameterError("unknown seed profile");
}

struct Projected {
  RadialField u;
  FiberingResult fib;
};

inline Projected project_and_rescale(const RadialField& v, const ModelParams& params, const SolverConfig& cfg) {
  const FiberingResult fib = project_to_manifold(v, params, cfg.t_scan, cfg.tol_root);
  return {with_fixed_endpoints(rescale_field(v, fib.t_star)), fib};
}

/**
 * Newton iteration on F(u) = −Δu + q²φᵤu − |u|^{p−2}u = 0 over the free nodes
 * 1..n−2, with u(0) eliminated and u(r_max) = 0. The Jacobian is assembled
 * column by column from the same discrete operators, so the iteration
 * converges to the exact critical point of the discrete energy. Steps are
 * halved until the residual norm decreases.
 */
inline std::vector<IterationRecord> newton_polish(RadialField& u, const ModelParams& params, std::size_t max_steps,
                                                  double target) {
  std::vector<IterationRecord> log;
  if (max_steps == 0) return log;
  const GridPtr& grid = u.grid_ptr();
  const std::size_t n = u.size();
  const std::size_t m = n - 2;
  const double q2 = params.q * params.q;
  const KernelKind kind = params.poisson_limit() ? KernelKind::coulomb() : KernelKind::bopp_podolsky(params.a);

  // −Δ applied to unit vectors (with the origin value eliminated), and the potential matrix
  Eigen::MatrixXd lap(m, m), pot(m, m);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j + 1] = 1.0;
    std::vector<double> ef = e;
    fix_endpoints(ef, *grid);
    const RadialField col = dirichlet_laplacian(RadialField(grid, ef));
    const RadialField pc = potential(kind, RadialField(grid, e));
    for (std::size_t i = 0; i < m; ++i) {
      lap(i, j) = -col[i + 1];
      pot(i, j) = pc[i + 1];
    }
  }

  auto residual_of = [&](const RadialField& v) {
    const RadialField r = el_residual(v, params, model_potential(v, params));
    return std::pair{r, l2_norm(r) / l2_norm(v)};
  };
  auto [res, rel] = residual_of(u);
  for (std::size_t step = 0; step < max_steps && rel >= target; ++step) {
    const RadialField phi = model_potential(u, params);
    Eigen::MatrixXd jac = lap;
    Eigen::VectorXd rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double ui = u[i + 1];
      jac(i, i) += q2 * phi[i + 1] - (params.p - 1.0) * std::pow(std::abs(ui), params.p - 2.0);
      for (std::size_t j = 0; j < m; ++j) jac(i, j) += 2.0 * q2 * ui * pot(i, j) * u[j + 1];
      rhs(i) = -res[i + 1];
    }
    const Eigen::VectorXd delta = jac.partialPivLu().solve(rhs);
    bool improved = false;
    for (double lambda = 1.0; lambda > 1e-3; lambda *= 0.5) {
      std::vector<double> v(u.values().begin(), u.values().end());
      for (std::size_t i = 0; i < m; ++i) v[i + 1] += lambda * delta(static_cast<Eigen::Index>(i));
      fix_endpoints(v, *grid);
      RadialField cand(grid, std::move(v));
      auto [cres, crel] = residual_of(cand);
      if (crel < rel) {
        u = std::move(cand);
        res = std::move(cres);
        rel = crel;
        improved = true;
        break;
      }
    }
    log.push_back({evaluate_any(u, params).energy, rel});
    if (!improved) break;
  }
  return log;
}

// Fills the diagnostics of `rep` from the final profile; converged is decided here.
inline void finalize_report(SolveReport& rep, const RadialField& u, const FiberingResult& fib) {
  const ModelParams& params = rep.params;
  const SolverConfig& cfg = rep.config;
  const auto& grid = u.grid_ptr();
  rep.u = u;
  rep.phi = model_potential(u, params);
  const RadialField res = el_residual(u, params, rep.phi);
  rep.breakdown = evaluate_any(u, params);
  rep.energy_c = rep.breakdown.energy;
  rep.residual_norm = l2_norm(res);
  rep.residual_relative = rep.residual_norm / l2_norm(u);
  rep.fibering = fib;
  const FunctionalBreakdown& b = rep.breakdown;
  rep.converged = rep.residual_relative < cfg.tol_residual &&
                  std::abs(b.manifold) < cfg.tol_identity * b.manifold_scale() && b.energy > 0.0;
  if (rep.converged) rep.status = SolveStatus::converged;

  const double umax = u.max_abs();
  double tail = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    if (grid->node(i) >= 0.9 * grid->r_max()) tail = std::max(tail, std::abs(u[i]));
  }
  rep.tail_ratio = tail / umax;
  rep.truncation_ok = rep.tail_ratio < 1e-10;
  if (!rep.truncation_ok) {
    rep.warnings.emplace_back("|u| near r_max is " + std::to_string(rep.tail_ratio) +
                              " of max|u|; consider a larger r_max");
  }
  double mn = u[0];
  for (double x : u.values()) mn = std::min(mn, x);
  rep.min_u = mn;
  rep.max_phi = rep.phi.max_abs();
  if (rep.exploratory) rep.warnings.emplace_back("p outside (4,6): exploratory run, no existence guarantee");
  if (rep.converged && !(rep.breakdown.m_plain > 1e-6)) {
    rep.warnings.emplace_back("M[u] below the 1e-6 floor on a converged report");
  }
}

inline SolveReport run_descent(const ModelParams& params, const GridPtr& grid, const SolverConfig& cfg,
                               const std::optional<RadialField>& warm) {
  require(grid->node(0) == 0.0, "solver: grid must start at r = 0");
  const double q2 = params.q * params.q;

  RadialField u0 = warm ? *warm : seed_field(grid, cfg);
  require(&u0.grid() == grid.get() || u0.grid() == *grid, "solver: warm start lives on a different grid");
  require(!u0.is_zero(), "solver: initial profile is identically zero");
  if (!warm) u0 = u0.map([m = u0.max_abs()](double x) { return x / m; });
  u0 = with_fixed_endpoints(u0);

  SolveReport rep(u0, RadialField(grid), params, cfg);
  rep.exploratory = !(params.p > 4.0 && params.p < 6.0);

  // amplitude retries until the seed's fiber has its maximum inside the window
  std::optional<Projected> cur;
  double amp = 1.0;
  for (int attempt = 0; attempt < 8 && !cur; ++attempt) {
    try {
      cur = project_and_rescale(u0.map([amp](double x) { return amp * x; }), params, cfg);
    } catch (const ProjectionFailure&) {
      amp = attempt % 2 == 0 ? 1.0 / std::pow(4.0, attempt / 2 + 1) : std::pow(4.0, attempt / 2 + 1);
    }
  }
  if (!cur) {
    rep.status = SolveStatus::projection_failure;
    rep.warnings.emplace_back("initial projection failed for every seed amplitude");
    return rep;
  }

  RadialField u = cur->u;
  FiberingResult fib = cur->fib;
  double step = cfg.step0;
  const double step_max = 64.0 * cfg.step0;
  rep.status = SolveStatus::max_iters;

  for (std::size_t it = 0;; ++it) {
    const RadialField phi = model_potential(u, params);
    const RadialField res = el_residual(u, params, phi);
    const FunctionalBreakdown b = evaluate_any(u, params);
    const double rn = l2_norm(res);
    const double un = l2_norm(u);
    rep.history.push_back({b.energy, rn / un});
    rep.iters = it;

    const bool done = rn < cfg.tol_residual * un && std::abs(b.manifold) < cfg.tol_identity * b.manifold_scale() &&
                      b.energy > 0.0;
    if (done) {
      rep.status = SolveStatus::converged;
      break;
    }
    // descent has reached the discretization floor of the projection: hand over to Newton
    if (cfg.polish_iters > 0 && rn < cfg.polish_start * un && it > 0 && rep.history[it - 1].residual <= rn / un) {
      rep.status = SolveStatus::stalled;
      break;
    }
    if (it >= cfg.max_iters) break;

    const RadialField d = sobolev_direction(res, phi, q2);
    const double slope = radial_integral(res * d);
    if (!(slope < 0.0)) {
      rep.status = SolveStatus::stalled;
      break;
    }

    bool accepted = false, first_try = true;
    double s = step;
    while (s >= 1e-14 * cfg.step0) {
      try {
        Projected trial = project_and_rescale(axpy(u, s, d), params, cfg);
        const double e = evaluate_any(trial.u, params).energy;
        if (e <= b.energy + cfg.armijo * s * slope) {
          u = std::move(trial.u);
          fib = trial.fib;
          accepted = true;
          break;
        }
      } catch (const ProjectionFailure&) {
        // shrink and retry
      }
      s *= cfg.shrink;
      first_try = false;
    }
    if (!accepted) {
      rep.status = SolveStatus::stalled;
      break;
    }
    step = first_try ? std::min(s / cfg.shrink, step_max) : s;
  }

  if (rep.status != SolveStatus::converged && cfg.polish_iters > 0 &&
      rep.history.back().residual < cfg.polish_start) {
    rep.polish_history = newton_polish(u, params, cfg.polish_iters, 1e-3 * cfg.tol_residual);
    rep.polish_iters = rep.polish_history.size();
    try {
      fib = project_to_manifold(u, params, cfg.t_scan, cfg.tol_root);
    } catch (const ProjectionFailure& ex) {
      rep.warnings.emplace_back(std::string("projection of the polished profile failed: ") + ex.what());
    }
  }

  finalize_report(rep, u, fib);
  return rep;
}

inline void check_solver_params(const ModelParams& params, const SolverConfig& cfg) {
  if (cfg.exploratory_p) {
    params.validate();
    require(params.p > 3.0 && params.p < 6.0, "solver: exploratory runs need 3 < p < 6");
  } else {
    params.validate_for_solver();
  }
}

}  // namespace detail

/// Minimizes Iₐ over the radial Nehari-Pohozaev manifold by projected, preconditioned descent.
inline SolveReport solve_ground_state(const ModelParams& params, const GridPtr& grid, const SolverConfig& cfg,
                                      const std::optional<RadialField>& warm = std::nullopt) {
  cfg.validate();
  detail::require(params.a > 0.0, "solve_ground_state: a must be > 0 (use solve_sp_ground_state for a = 0)");
  detail::check_solver_params(params, cfg);
  return detail::run_descent(params, grid, cfg, warm);
}

/// Same algorithm for the zero-mass Schrödinger-Poisson limit a = 0.
inline SolveReport solve_sp_ground_state(double q, double p, const GridPtr& grid, const SolverConfig& cfg,
                                         const std::optional<RadialField>& warm = std::nullopt) {
  cfg.validate();
  const ModelParams params{0.0, q, p};
  detail::check_solver_params(params, cfg);
  return detail::run_descent(params, grid, cfg, warm);
}

/**
 * @brief Diagnostics of a supplied profile under the solver's convergence test.
 *
 * No iteration is done. The profile is projected once to report t_u; a failed
 * projection becomes a warning. The status is `converged` or `external`.
 */
inline SolveReport assess_profile(const RadialField& u, const ModelParams& params, const SolverConfig& cfg) {
  cfg.validate();
  params.validate();
  if (u.is_zero()) throw UndefinedInputError("assess_profile: u must be nontrivial");
  SolveReport rep(u, RadialField(u.grid_ptr()), params, cfg);
  rep.status = SolveStatus::external;
  rep.exploratory = !(params.p > 4.0 && params.p < 6.0);
  rep.history.push_back({evaluate_any(u, params).energy, 0.0});
  FiberingResult fib;
  try {
    fib = project_to_manifold(u, params, cfg.t_scan, cfg.tol_root);
  } catch (const ProjectionFailure& ex) {
    rep.warnings.emplace_back(std::string("projection failed: ") + ex.what());
  }
  detail::finalize_report(rep, u, fib);
  rep.history.back().residual = rep.residual_relative;
  return rep;
}

struct UpperBound {
  double bound = 0.0;   ///< Iₐ at the projection of the a = 0 ground state
  double c0 = 0.0;
  double t_star = 1.0;
};

/**
 * @brief Projects the a = 0 ground state onto the manifold at screening length a.
 *
 * The fiber value at the projection bounds cₐ from above, and is itself at
 * most c₀ because 𝒦ₐ ≤ 1/d pointwise.
 */
inline UpperBound upper_bound_check(const SolveReport& report_sp, const ModelParams& params_a,
                                    const ScanWindow& win = {}, double tol_root = 1e-10) {
  detail::require(report_sp.converged, "upper_bound_check: the a = 0 report must be converged");
  detail::require(report_sp.params.poisson_limit(), "upper_bound_check: expects a Schrodinger-Poisson report");
  detail::require(params_a.a > 0.0, "upper_bound_check: a must be > 0");
  const FiberingResult fib = project_to_manifold(report_sp.u, params_a, win, tol_root);
  UpperBound ub{fib.zeta_at_t, report_sp.energy_c, fib.t_star};
  if (!(ub.bound <= ub.c0 + 1e-10 * std::max(1.0, std::abs(ub.c0)))) {
    throw std::logic_error("upper_bound_check: projected energy " + std::to_string(ub.bound) + " exceeds c0 " +
                           std::to_string(ub.c0));
  }
  return ub;
}

}  // namespace sbp
