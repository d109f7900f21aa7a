#pragma once

#include <cmath>
#include <numbers>

#include "sbp/error.hpp"
#include "sbp/field.hpp"
#include "sbp/params.hpp"
#include "sbp/potential.hpp"

namespace sbp {

/// Every scalar the variational analysis uses, for one profile u and one parameter set.
struct FunctionalBreakdown {
  ModelParams params;
  double dirichlet = 0.0;  ///< ‖∇u‖₂²
  double pair_bp = 0.0;    ///< V(u², u²); the Coulomb pair energy when a = 0
  double pair_exp = 0.0;   ///< Wₐ(u) = ∬ e^{-|x-y|/a} u²u²; zero when a = 0
  double lp_p = 0.0;       ///< ‖u‖_p^p
  double energy = 0.0;     ///< Iₐ(u)
  double nehari = 0.0;     ///< Iₐ'(u)[u]
  double pohozaev = 0.0;   ///< Pₐ(u), radial form
  double manifold = 0.0;   ///< Jₐ(u) = 2 Iₐ'(u)[u] + Pₐ(u)
  double m_plain = 0.0;    ///< ‖∇u‖² + V
  double m_q = 0.0;        ///< ‖∇u‖² + q² V
  double e_norm = 0.0;     ///< (‖∇u‖² + V^{1/2})^{1/2}

  // Sums of absolute values of the terms making up each identity.
  double nehari_scale() const {
    const double q2 = params.q * params.q;
    return dirichlet + q2 * pair_bp + lp_p;
  }
  double pohozaev_scale() const {
    const double q2 = params.q * params.q;
    const double w = params.a > 0.0 ? pair_exp / params.a : 0.0;
    return 0.5 * dirichlet + 0.25 * q2 * (5.0 * pair_bp + w) + 3.0 / params.p * lp_p;
  }
  double manifold_scale() const {
    const double q2 = params.q * params.q;
    const double w = params.a > 0.0 ? pair_exp / params.a : 0.0;
    return 1.5 * dirichlet + 0.75 * q2 * pair_bp + 0.25 * q2 * w + (2.0 * params.p - 3.0) / params.p * lp_p;
  }
};

namespace detail {

inline FunctionalBreakdown assemble(const ModelParams& pr, double d, double v, double w, double l) {
  const double q2 = pr.q * pr.q;
  const double p = pr.p;
  FunctionalBreakdown b;
  b.params = pr;
  b.dirichlet = d;
  b.pair_bp = v;
  b.pair_exp = w;
  b.lp_p = l;
  b.energy = 0.5 * d + 0.25 * q2 * v - l / p;
  b.nehari = d + q2 * v - l;
  const double w_over_a = pr.a > 0.0 ? w / pr.a : 0.0;
  b.pohozaev = -0.5 * d - 0.25 * q2 * (5.0 * v + w_over_a) + 3.0 / p * l;
  b.manifold = 1.5 * d + 0.75 * q2 * v - 0.25 * q2 * w_over_a - (2.0 * p - 3.0) / p * l;
  b.m_plain = d + v;
  b.m_q = d + q2 * v;
  b.e_norm = std::sqrt(d + std::sqrt(std::max(v, 0.0)));
  return b;
}

}  // namespace detail

/// Breakdown at a > 0.
inline FunctionalBreakdown evaluate(const RadialField& u, const ModelParams& params) {
  params.validate();
  detail::require(params.a > 0.0, "evaluate: a must be > 0 (use evaluate_sp for the Poisson limit)");
  if (u.is_zero()) return detail::assemble(params, 0, 0, 0, 0);
  const PairEnergyReport pe = pair_energies(u, params.a);
  return detail::assemble(params, dirichlet_energy(u), pe.v_bp, pe.w_exp, lp_norm_pow(u, params.p));
}

/// Breakdown of the zero-mass Schrödinger-Poisson functional (Coulomb kernel, no exponential term).
inline FunctionalBreakdown evaluate_sp(const RadialField& u, double q, double p) {
  const ModelParams params{0.0, q, p};
  params.validate();
  if (u.is_zero()) return detail::assemble(params, 0, 0, 0, 0);
  return detail::assemble(params, dirichlet_energy(u), pair_energy(KernelKind::coulomb(), u), 0.0,
                          lp_norm_pow(u, p));
}

/// Dispatches on params.a: the Bopp-Podolsky functional for a > 0, the Poisson limit for a = 0.
inline FunctionalBreakdown evaluate_any(const RadialField& u, const ModelParams& params) {
  return params.poisson_limit() ? evaluate_sp(u, params.q, params.p) : evaluate(u, params);
}

/// Nonlocal potential φᵤ = k ∗ u² for the model's kernel.
inline RadialField model_potential(const RadialField& u, const ModelParams& params) {
  const KernelKind k = params.poisson_limit() ? KernelKind::coulomb() : KernelKind::bopp_podolsky(params.a);
  return potential(k, u * u);
}

/**
 * @brief Strong-form residual -Δu + q²φᵤu - |u|^{p-2}u.
 *
 * Uses dirichlet_laplacian, so on interior nodes the field is the gradient of
 * the discrete energy in the quadrature inner product. The last node carries the
 * homogeneous Dirichlet condition of the zero extension and reports 0.
 */
inline RadialField el_residual(const RadialField& u, const ModelParams& params, const RadialField& phi) {
  params.validate();
  const RadialField lap = dirichlet_laplacian(u);
  const double q2 = params.q * params.q;
  std::vector<double> out(u.size(), 0.0);
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double ui = u[i];
    out[i] = -lap[i] + q2 * phi[i] * ui - std::pow(std::abs(ui), params.p - 2.0) * ui;
  }
  return RadialField(u.grid_ptr(), std::move(out));
}

inline RadialField el_residual(const RadialField& u, const ModelParams& params) {
  return el_residual(u, params, model_potential(u, params));
}

// ---------------------------------------------------------------------------
// Fibering map t ↦ Iₐ(t² u(t·)), evaluated without resampling u.

/// Quantities of u that the fibering map needs; the pair energies are recomputed at a·t.
struct FiberInputs {
  ModelParams params;
  double dirichlet = 0.0;
  double lp_p = 0.0;
  RadialField rho;          ///< u²
  double coulomb_pair = 0.0;  ///< scale free, so computed once

  FiberInputs(const RadialField& u, const ModelParams& pr)
      : params(pr), dirichlet(dirichlet_energy(u)), lp_p(lp_norm_pow(u, pr.p)), rho(u * u) {
    params.validate();
    coulomb_pair = radial_integral(potential(KernelKind::coulomb(), rho) * rho);
  }

  /// V_{at} alone; for a = 0 the Coulomb pair energy.
  double pair_at(double t) const {
    if (params.poisson_limit()) return coulomb_pair;
    return coulomb_pair - radial_integral(potential(KernelKind::yukawa(params.a * t), rho) * rho);
  }

  /// (V_{at}, W_{at}); for a = 0 the Coulomb pair energy, which is scale free.
  std::pair<double, double> pairs_at(double t) const {
    if (params.poisson_limit()) return {coulomb_pair, 0.0};
    const double at = params.a * t;
    const double y = radial_integral(potential(KernelKind::yukawa(at), rho) * rho);
    const double w = radial_integral(potential(KernelKind::pure_exponential(at), rho) * rho);
    return {coulomb_pair - y, w};
  }
};

/// ζ(t) = (t³/2)‖∇u‖² + (q²t³/4) V_{at} − (t^{2p−3}/p)‖u‖_p^p
inline double fiber_value(const FiberInputs& in, double t) {
  detail::require(std::isfinite(t) && t > 0.0, "fiber_value: t must be > 0");
  const double v = in.pair_at(t);
  const double q2 = in.params.q * in.params.q;
  const double p = in.params.p;
  const double t3 = t * t * t;
  return 0.5 * t3 * in.dirichlet + 0.25 * q2 * t3 * v - std::pow(t, 2.0 * p - 3.0) / p * in.lp_p;
}

struct FiberDerivative {
  double value = 0.0;
  double scale = 0.0;  ///< Σ |terms|
};

/// ζ'(t) = (3t²/2)‖∇u‖² + (3q²t²/4)V_{at} − (q²t/(4a))W_{at} − ((2p−3)t^{2p−4}/p)‖u‖_p^p
inline FiberDerivative fiber_derivative_terms(const FiberInputs& in, double t) {
  detail::require(std::isfinite(t) && t > 0.0, "fiber_derivative: t must be > 0");
  const auto [v, w] = in.pairs_at(t);
  const double q2 = in.params.q * in.params.q;
  const double p = in.params.p;
  const double t1 = 1.5 * t * t * in.dirichlet;
  const double t2 = 0.75 * q2 * t * t * v;
  const double t3 = in.params.poisson_limit() ? 0.0 : 0.25 * q2 * t / in.params.a * w;
  const double t4 = (2.0 * p - 3.0) / p * std::pow(t, 2.0 * p - 4.0) * in.lp_p;
  return {t1 + t2 - t3 - t4, std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4)};
}

inline double fiber_derivative(const FiberInputs& in, double t) { return fiber_derivative_terms(in, t).value; }

inline double fiber_value(const RadialField& u, const ModelParams& params, double t) {
  return fiber_value(FiberInputs(u, params), t);
}
inline double fiber_derivative(const RadialField& u, const ModelParams& params, double t) {
  return fiber_derivative(FiberInputs(u, params), t);
}

// ---------------------------------------------------------------------------
// Scalar inequalities behind the splitting estimate and the radial nonexistence proof.

/// g(t) = (1 − t³)(2p − 3)/3 + t^{2p−3} − 1, written as t^m − 1 − (m/3)(t³ − 1) with m = 2p − 3.
inline double scalar_g(double t, double p) {
  detail::require(t > 0.0, "scalar_g: t must be > 0");
  detail::require(p > 1.5, "scalar_g: p must be > 3/2");
  const double m = 2.0 * p - 3.0;
  const double lt = std::log(t);
  return std::expm1(m * lt) - m / 3.0 * std::expm1(3.0 * lt);
}

namespace detail {
// e^x − 1 − x without cancellation
inline double expm1_minus_x(double x) {
  if (std::abs(x) > 0.5) return std::expm1(x) - x;
  double term = x * x / 2.0, sum = 0.0;
  for (int k = 2; k < 40; ++k) {
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    term *= x / (k + 1);
  }
  return sum;
}
}  // namespace detail

/**
 * @brief t³(e^{−b/t} − e^{−b}) + ((1 − t³)/3) b e^{−b}.
 *
 * Rewritten as e^{−b}[ b (t−1)² (2t+1)/3 + t³ (e^x − 1 − x) ] with x = b(t−1)/t,
 * a sum of two nonnegative terms.
 */
inline double exp_inequality_lhs(double t, double b) {
  detail::require(t > 0.0, "exp_inequality_lhs: t must be > 0");
  detail::require(b >= 0.0, "exp_inequality_lhs: b must be >= 0");
  const double d = t - 1.0;
  const double x = b * d / t;
  return std::exp(-b) * (b * d * d * (2.0 * t + 1.0) / 3.0 + t * t * t * detail::expm1_minus_x(x));
}

/// (1 − e^{−b})/b − e^{−b} = e^{−b}(e^b − 1 − b)/b, the integrand sign in the radial nonexistence proof.
inline double radial_kernel_gap(double b) {
  detail::require(b > 0.0, "radial_kernel_gap: b must be > 0");
  if (b > 700.0) return 1.0 / b;
  return std::exp(-b) * detail::expm1_minus_x(b) / b;
}

/// Iₐ(u) − ζ(t) − ((1 − t³)/3) Jₐ(u); nonnegative for p ∈ (4,6).
inline double splitting_gap(const RadialField& u, const ModelParams& params, double t) {
  detail::require(t > 0.0, "splitting_gap: t must be > 0");
  if (u.is_zero()) return 0.0;
  const FunctionalBreakdown b = evaluate_any(u, params);
  if (t == 1.0) return 0.0;
  const FiberInputs in(u, params);
  return b.energy - fiber_value(in, t) - (1.0 - t * t * t) / 3.0 * b.manifold;
}

// ---------------------------------------------------------------------------

/// Pohozaev/Nehari combinations whose signs rule out solutions for p ≥ 6, p < 12/7 and (radially) p ≤ 2.
struct NonexistenceCombos {
  double d_high = 0.0;
  double d_low = 0.0;
  double d_radial = 0.0;
};

inline NonexistenceCombos nonexistence_combos(const RadialField& u, const ModelParams& params) {
  params.validate();
  detail::require(params.a > 0.0, "nonexistence_combos: a must be > 0");
  if (u.is_zero()) throw UndefinedInputError("nonexistence_combos: u must be nontrivial");
  const double a = params.a, q2 = params.q * params.q, p = params.p;
  const RadialField rho = u * u;
  const RadialField phi = potential(KernelKind::bopp_podolsky(a), rho);
  const double v = radial_integral(phi * rho);
  const double w = radial_integral(potential(KernelKind::pure_exponential(a), rho) * rho);
  const double d = dirichlet_energy(u);
  const PotentialNorms nrm = potential_norms(phi);
  const double pi = std::numbers::pi;

  NonexistenceCombos c;
  c.d_high = (6.0 - p) / (2.0 * p) * d + q2 * (12.0 - 5.0 * p) / (4.0 * p) * v - q2 * a * a / (8.0 * pi) * nrm.lap_sq;
  c.d_low = (6.0 - p) / (2.0 * p) * d + q2 * ((12.0 - 5.0 * p) / (4.0 * p) - 0.5) * v + q2 / (8.0 * pi) * nrm.grad_sq;
  c.d_radial = (1.0 - p / 6.0) * d + q2 * ((1.0 - 5.0 * p / 12.0) * v - p / (12.0 * a) * w);
  return c;
}

}  // namespace sbp
