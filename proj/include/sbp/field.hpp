#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "sbp/error.hpp"
#include "sbp/grid.hpp"
#include "sbp/interpolation.hpp"

namespace sbp {

/// Samples of a radial function on a grid. Values are always finite.
class RadialField {
 public:
  RadialField(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
    detail::require(grid_ != nullptr, "field needs a grid");
    detail::require(values_.size() == grid_->size(), "field size does not match grid");
    for (double v : values_) detail::require(std::isfinite(v), "field values must be finite");
  }

  /// Zero field on `grid`.
  explicit RadialField(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}

  static RadialField sample(GridPtr grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->node(i));
    return RadialField(std::move(grid), std::move(v));
  }

  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }
  bool is_zero() const { return max_abs() == 0.0; }

  /// Pointwise map onto the same grid.
  template <class F>
  RadialField map(F&& f) const {
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(values_[i]);
    return RadialField(grid_, std::move(v));
  }

  bool operator==(const RadialField& other) const {
    return values_ == other.values_ && *grid_ == *other.grid_;
  }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

namespace detail {

inline void require_same_grid(const RadialField& a, const RadialField& b) {
  require(&a.grid() == &b.grid() || a.grid() == b.grid(), "fields live on different grids");
}

}  // namespace detail

inline RadialField operator*(const RadialField& a, const RadialField& b) {
  detail::require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
  return RadialField(a.grid_ptr(), std::move(v));
}

/// a + s*b
inline RadialField axpy(const RadialField& a, double s, const RadialField& b) {
  detail::require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + s * b[i];
  return RadialField(a.grid_ptr(), std::move(v));
}

/// 4π ∫ f(r) r² dr, the integral over R³ of a radial integrand.
inline double radial_integral(const RadialField& f) {
  const auto& g = f.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = g.node(i);
    s += g.weight(i) * r * r * f[i];
  }
  return 4.0 * std::numbers::pi * s;
}

/// ‖u‖_p^p = 4π Σ w r² |u|^p
inline double lp_norm_pow(const RadialField& u, double p) {
  detail::require(p >= 1.0, "lp norm exponent must be >= 1");
  const auto& g = u.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = g.node(i);
    s += g.weight(i) * r * r * std::pow(std::abs(u[i]), p);
  }
  return 4.0 * std::numbers::pi * s;
}

inline double lp_norm(const RadialField& u, double p) { return std::pow(lp_norm_pow(u, p), 1.0 / p); }

namespace detail {

// Sixth-order staggered first difference: u'(x_{k+1/2}) ≈ Σ_m b_m (u_{k+m} − u_{k+1−m}) / h.
inline constexpr double stagger_coef[3] = {75.0 / 64.0, -25.0 / 384.0, 3.0 / 640.0};

// u_j continued evenly through the origin and by zero past the last node.
inline double folded(std::span<const double> u, long j) {
  const long k = j < 0 ? -j : j;
  return k < static_cast<long>(u.size()) ? u[static_cast<std::size_t>(k)] : 0.0;
}

inline double staggered_diff(std::span<const double> u, std::size_t k) {
  const long lk = static_cast<long>(k);
  double s = 0.0;
  for (long m = 1; m <= 3; ++m) s += stagger_coef[m - 1] * (folded(u, lk + m) - folded(u, lk + 1 - m));
  return s;
}

// r²/g' · (1/h_x) at the half node x_{k+1/2}, so that Σ_k face(k) (δu_k)² ≈ ∫ r² u_r² dr.
inline double face_weight(const RadialGrid& g, std::size_t k) {
  const double hx = g.map_step();
  const double x = (static_cast<double>(k) + 0.5) * hx;
  const double r = g.map_value(x);
  return r * r / g.map_slope(x) / hx;
}

// ∂/∂u_j of Σ_k face(k) (δu_k)², folding the mirrored stencil entries back onto j ≥ 0.
inline std::vector<double> staggered_form_gradient(const RadialField& u) {
  const auto& g = u.grid();
  const std::size_t n = u.size();
  std::vector<double> grad(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double s = 2.0 * face_weight(g, k) * staggered_diff(u.values(), k);
    const long lk = static_cast<long>(k);
    for (long m = 1; m <= 3; ++m) {
      const long plus = lk + m, minus = lk + 1 - m;
      const long jp = plus < 0 ? -plus : plus, jm = minus < 0 ? -minus : minus;
      if (jp < static_cast<long>(n)) grad[static_cast<std::size_t>(jp)] += s * stagger_coef[m - 1];
      if (jm < static_cast<long>(n)) grad[static_cast<std::size_t>(jm)] -= s * stagger_coef[m - 1];
    }
  }
  return grad;
}

/**
 * Fornberg's recursion: weights c[m][j] of the m-th derivative at z from the
 * values at x[0..], m ≤ 2.
 */
inline void fd_weights(double z, std::span<const double> x, double c[3][8]) {
  const std::size_t np = x.size();
  for (int m = 0; m < 3; ++m) std::fill(c[m], c[m] + 8, 0.0);
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < np; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, 2);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
}

// (f', f'') at node i from seven nodes in r: centered where possible, mirrored
// evenly through r = 0, one-sided at r_max.
inline std::pair<double, double> radial_derivatives_at(const RadialField& f, std::size_t i) {
  const auto& g = f.grid();
  const long n = static_cast<long>(f.size());
  const bool origin = g.node(0) == 0.0;
  long lo = static_cast<long>(i) - 3;
  if (lo + 6 > n - 1) lo = n - 7;
  if (!origin && lo < 0) lo = 0;
  double x[7], y[7];
  for (long k = 0; k < 7; ++k) {
    const long j = lo + k;
    const long a = j < 0 ? -j : j;
    x[k] = j < 0 ? -g.node(static_cast<std::size_t>(a)) : g.node(static_cast<std::size_t>(a));
    y[k] = f[static_cast<std::size_t>(a)];
  }
  double c[3][8];
  fd_weights(g.node(i), std::span<const double>(x, 7), c);
  double d1 = 0.0, d2 = 0.0;
  for (int k = 0; k < 7; ++k) {
    d1 += c[1][k] * y[k];
    d2 += c[2][k] * y[k];
  }
  return {d1, d2};
}

}  // namespace detail

/// f'(r) on the nodes: seven-point stencils, f'(0) = 0 when the grid starts at the origin.
inline RadialField radial_derivative(const RadialField& f) {
  detail::require(f.size() >= 7, "radial derivative needs at least 7 nodes");
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = detail::radial_derivatives_at(f, i).first;
  if (f.grid().node(0) == 0.0) out[0] = 0.0;
  return RadialField(f.grid_ptr(), std::move(out));
}

/**
 * @brief f'' + (2/r) f' on the nodes, for fields that need not vanish at r_max.
 *
 * Seven-point stencils in r, mirrored evenly through the origin (where the
 * value is the regular limit 3 f''(0)) and one-sided at r_max.
 */
inline RadialField radial_laplacian(const RadialField& f) {
  const auto& g = f.grid();
  detail::require(f.size() >= 7, "radial laplacian needs at least 7 nodes");
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto [d1, d2] = detail::radial_derivatives_at(f, i);
    const double r = g.node(i);
    out[i] = r > 0.0 ? d2 + 2.0 * d1 / r : 3.0 * d2;
  }
  return RadialField(f.grid_ptr(), std::move(out));
}

/**
 * @brief ‖∇u‖₂² of u continued by zero past r_max.
 *
 * Mapped grids: 4π Σ_k (r²/g')(x_{k+1/2}) (δu)²_{k+1/2} / h_x with the sixth-order
 * staggered difference δ, u even through the origin; the midpoint sum in x is
 * spectrally accurate. Other grids: the edge sum 4π Σ r_i r_{i+1} (u_{i+1} − u_i)² / h_i.
 * Both are sums of squares, hence convex in u.
 */
inline double dirichlet_energy(const RadialField& u) {
  const auto& g = u.grid();
  double s = 0.0;
  if (g.mapped()) {
    for (std::size_t k = 0; k + 1 < u.size(); ++k) {
      const double d = detail::staggered_diff(u.values(), k);
      s += detail::face_weight(g, k) * d * d;
    }
  } else {
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      const double du = u[i + 1] - u[i];
      s += g.node(i) * g.node(i + 1) * du * du / g.width(i);
    }
  }
  return 4.0 * std::numbers::pi * s;
}

/**
 * @brief Laplacian paired with dirichlet_energy.
 *
 * At every node with r > 0 it is −(∂/∂u_i ½‖∇u‖²) / (4π w_i r_i²), so the first
 * variation of the discrete energy in the quadrature inner product is exactly
 * −Δu. At r = 0, which carries no weight, the regular limit 3u''(0) is reported.
 */
inline RadialField dirichlet_laplacian(const RadialField& u) {
  const auto& g = u.grid();
  const std::size_t n = u.size();
  std::vector<double> out(n, 0.0);
  if (g.mapped()) {
    const std::vector<double> grad = detail::staggered_form_gradient(u);
    for (std::size_t i = 1; i < n; ++i) {
      const double r = g.node(i);
      out[i] = -0.5 * grad[i] / (g.weight(i) * r * r);
    }
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double flux_r = g.node(i + 1) * (u[i + 1] - u[i]) / g.width(i);
      const double flux_l = g.node(i - 1) * (u[i] - u[i - 1]) / g.width(i - 1);
      out[i] = (flux_r - flux_l) / (g.weight(i) * g.node(i));
    }
    const double h = g.width(n - 2);
    out[n - 1] = g.node(n - 2) * (u[n - 2] - u[n - 1]) / h / (g.weight(n - 1) * g.node(n - 1));
  }
  if (g.node(0) == 0.0) out[0] = 3.0 * detail::radial_derivatives_at(u, 0).second;
  return RadialField(u.grid_ptr(), std::move(out));
}

/// v(r) = t² u(t r), monotone cubic in between nodes, zero beyond r_max.
inline RadialField rescale_field(const RadialField& u, double t) {
  detail::require(std::isfinite(t) && t > 0.0, "rescale factor must be positive");
  const auto& g = u.grid();
  if (t == 1.0) return u;
  const MonotoneCubic interp(g.nodes(), u.values(), /*even_at_origin=*/g.node(0) == 0.0);
  std::vector<double> v(u.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = t * g.node(i);
    v[i] = x > g.r_max() ? 0.0 : t * t * interp(x);
  }
  return RadialField(u.grid_ptr(), std::move(v));
}

}  // namespace sbp
