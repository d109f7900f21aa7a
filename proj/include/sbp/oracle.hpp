#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sbp/error.hpp"
#include "sbp/field.hpp"
#include "sbp/kernels.hpp"
#include "sbp/potential.hpp"

// Brute-force reference values for the potentials module. Nothing here uses the
// closed inner integrals or the diagonal corrections of potential.hpp.

namespace sbp {

struct OracleOptions {
  std::size_t refine = 4;  ///< coarse mesh has refine·(n−1)+1 points on [0, r_max]
  double gk_tol = 1e-13;
};

namespace detail {

// t k(t) straight from the kernel definition
inline double oracle_t_k(const KernelKind& k, double t) {
  if (t == 0.0) return k.tag == KernelTag::coulomb ? 1.0 : (k.tag == KernelTag::yukawa ? 1.0 : 0.0);
  return t * k(t);
}

// F[j] = ∫₀^{j h} t k(t) dt, accumulated cell by cell with 21-point Gauss-Kronrod.
// t k(t) is smooth on every cell, so one panel per cell is exact to rounding
// unless the cell is wider than a few screening lengths; then it is bisected.
inline std::vector<double> cumulative_moment(const KernelKind& k, double h, std::size_t count, double tol) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  std::vector<double> F(count, 0.0);
  auto f = [&](double t) { return oracle_t_k(k, t); };
  const unsigned depth = (k.tag == KernelTag::coulomb || h <= 2.0 * k.a) ? 0u : 6u;
  for (std::size_t j = 1; j < count; ++j) {
    F[j] = F[j - 1] + GK::integrate(f, static_cast<double>(j - 1) * h, static_cast<double>(j) * h, depth, tol);
  }
  return F;
}

// 8π² h² Σ_i Σ_j w_i w_j r_i s_j ρ_i ρ_j A(|r_i − s_j|, r_i + s_j) on a uniform mesh of m points.
inline double tensor_trapezoid(const KernelKind& k, const std::function<double(double)>& rho, double r_max,
                               std::size_t m, double tol) {
  const double h = r_max / static_cast<double>(m - 1);
  const std::vector<double> F = cumulative_moment(k, h, 2 * m - 1, tol);
  std::vector<double> f(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = static_cast<double>(i) * h;
    const double w = (i == 0 || i + 1 == m) ? 0.5 : 1.0;
    f[i] = w * r * rho(r);
  }
  double total = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    if (f[i] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 1; j < m; ++j) {
      const std::size_t lo = i > j ? i - j : j - i;
      row += f[j] * (F[i + j] - F[lo]);
    }
    total += f[i] * row;
  }
  return 8.0 * std::numbers::pi * std::numbers::pi * h * h * total;
}

// Four-point Lagrange interpolation of a field, even through the origin.
inline std::function<double(double)> field_interpolant(const RadialField& u) {
  return [&u](double r) {
    const auto& g = u.grid();
    const std::size_t n = u.size();
    if (r >= g.r_max()) return r > g.r_max() ? 0.0 : u[n - 1];
    const auto nodes = g.nodes();
    const std::size_t k = static_cast<std::size_t>(std::upper_bound(nodes.begin(), nodes.end(), r) - nodes.begin());
    long lo = static_cast<long>(k) - 2;
    if (lo + 3 > static_cast<long>(n) - 1) lo = static_cast<long>(n) - 4;
    if (g.node(0) != 0.0 && lo < 0) lo = 0;
    double x[4], y[4];
    for (int m = 0; m < 4; ++m) {
      const long j = lo + m;
      const std::size_t a = static_cast<std::size_t>(j < 0 ? -j : j);
      x[m] = j < 0 ? -g.node(a) : g.node(a);
      y[m] = u[a];
    }
    double s = 0.0;
    for (int m = 0; m < 4; ++m) {
      double l = 1.0;
      for (int q = 0; q < 4; ++q) {
        if (q != m) l *= (r - x[q]) / (x[m] - x[q]);
      }
      s += l * y[m];
    }
    return s;
  };
}

}  // namespace detail

/**
 * @brief ∬ k(|x − y|) u²(x) u²(y) dx dy by brute-force 2-D quadrature.
 *
 * The inner moments A(α, β) = ∫_α^β t k(t) dt come from adaptive Gauss-Kronrod;
 * the outer double integral is the tensor trapezoid rule on two nested uniform
 * meshes combined by Richardson extrapolation.
 */
inline double oracle_pair(const KernelKind& kind, const std::function<double(double)>& u, double r_max,
                          std::size_t m, const OracleOptions& opt = {}) {
  kind.validate();
  detail::require(r_max > 0.0 && m >= 8, "oracle_pair: need r_max > 0 and at least 8 points");
  auto rho = [&u](double r) {
    const double v = u(r);
    return v * v;
  };
  const double coarse = detail::tensor_trapezoid(kind, rho, r_max, m, opt.gk_tol);
  const double fine = detail::tensor_trapezoid(kind, rho, r_max, 2 * m - 1, opt.gk_tol);
  return (4.0 * fine - coarse) / 3.0;
}

/// Oracle for a sampled field: interpolated onto meshes refine·(n−1)+1 and twice as fine.
inline double oracle_pair(const KernelKind& kind, const RadialField& u, const OracleOptions& opt = {}) {
  if (u.is_zero()) return 0.0;
  const std::size_t m = opt.refine * (u.size() - 1) + 1;
  return oracle_pair(kind, detail::field_interpolant(u), u.grid().r_max(), m, opt);
}

/**
 * @brief P(r) = (2π/r) ∫ s ρ(s) A(|r − s|, r + s) ds at one radius, with the same
 * ingredients as oracle_pair (and P(0) = 4π ∫ s ρ(s) · s k(s) ds).
 */
inline double oracle_potential(const KernelKind& kind, const std::function<double(double)>& rho, double r,
                               double r_max, std::size_t m, const OracleOptions& opt = {}) {
  kind.validate();
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  auto moment = [&](double lo, double hi) {
    if (hi <= lo) return 0.0;
    return GK::integrate([&](double t) { return detail::oracle_t_k(kind, t); }, lo, hi, 10, opt.gk_tol);
  };
  auto integrand = [&](double sj) {
    const double inner = r > 0.0 ? moment(std::abs(r - sj), r + sj) / r * 2.0 * std::numbers::pi
                                 : 4.0 * std::numbers::pi * detail::oracle_t_k(kind, sj);
    return sj * rho(sj) * inner;
  };
  // The integrand has a kink at s = r, so each side gets its own Richardson-extrapolated trapezoid.
  auto trap = [&](double lo, double hi, std::size_t pts) {
    const double h = (hi - lo) / static_cast<double>(pts - 1);
    double s = 0.5 * (integrand(lo) + integrand(hi));
    for (std::size_t j = 1; j + 1 < pts; ++j) s += integrand(lo + static_cast<double>(j) * h);
    return h * s;
  };
  auto piece = [&](double lo, double hi) {
    if (hi <= lo) return 0.0;
    const auto pts = std::max<std::size_t>(3, static_cast<std::size_t>(static_cast<double>(m) * (hi - lo) / r_max));
    return (4.0 * trap(lo, hi, 2 * pts - 1) - trap(lo, hi, pts)) / 3.0;
  };
  const double split = std::min(r, r_max);
  return piece(0.0, split) + piece(split, r_max);
}

// ---------------------------------------------------------------------------
// fixture suite

struct OracleFixture {
  std::string name;
  std::function<double(double)> u;
};

/// Five smooth radial profiles with different decay, width and a node-free ring.
inline std::vector<OracleFixture> oracle_fixtures() {
  return {{"gaussian", [](double r) { return std::exp(-r * r); }},
          {"wide", [](double r) { return std::exp(-r * r / 4.0) * (1.0 + 0.5 * r * r); }},
          {"sech", [](double r) { return 1.0 / std::cosh(r); }},
          {"bump", [](double r) { return 1.0 / ((1.0 + r * r) * (1.0 + r * r)); }},
          {"ring", [](double r) { return r * r * std::exp(-r * r); }}};
}

struct OracleRow {
  std::string fixture;
  KernelKind kind;
  double production = 0.0;
  double oracle = 0.0;
  double relative_error = 0.0;
};

struct OracleSuite {
  std::vector<OracleRow> rows;
  double max_relative_error = 0.0;
  double tolerance = 1e-6;

  bool ok() const { return max_relative_error <= tolerance; }
};

/**
 * @brief pair_energy against oracle_pair for every fixture and all four kernels.
 *
 * The oracle integrates the analytic fixture on an m-point mesh and its
 * 2m − 1 refinement, independent of the production grid.
 */
inline OracleSuite oracle_suite(const GridPtr& grid, double a, std::size_t m = 1021, double tolerance = 1e-6,
                                const OracleOptions& opt = {}) {
  detail::require(a > 0.0, "oracle_suite: a must be > 0");
  OracleSuite out;
  out.tolerance = tolerance;
  const std::vector<KernelKind> kinds = {KernelKind::coulomb(), KernelKind::yukawa(a), KernelKind::bopp_podolsky(a),
                                         KernelKind::pure_exponential(a)};
  for (const auto& fx : oracle_fixtures()) {
    const RadialField u = RadialField::sample(grid, fx.u);
    for (const auto& k : kinds) {
      OracleRow row{fx.name, k, pair_energy(k, u), oracle_pair(k, fx.u, grid->r_max(), m, opt), 0.0};
      row.relative_error = std::abs(row.production - row.oracle) / std::abs(row.oracle);
      out.max_relative_error = std::max(out.max_relative_error, row.relative_error);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace sbp
