#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "sbp/field.hpp"
#include "sbp/kernels.hpp"

namespace sbp {

namespace detail {

// x coth x - 1
inline double xcothx_minus_one(double x) {
  if (x < 0.1) {
    const double x2 = x * x;
    return x2 * (1.0 / 3.0 - x2 * (1.0 / 45.0 - x2 * (2.0 / 945.0 - x2 / 4725.0)));
  }
  return x / std::tanh(x) - 1.0;
}

// 1 - x² / sinh² x
inline double one_minus_x2_csch2(double x) {
  if (x < 0.1) {
    const double x2 = x * x;
    return x2 * (1.0 / 3.0 - x2 * (1.0 / 15.0 - x2 * 2.0 / 189.0));
  }
  const double s = std::sinh(x);
  return 1.0 - x * x / (s * s);
}

// ∫₀^∞ κ - h(κ(0)/2 + Σ_{k≥1} κ(kh)) for the local profile κ(x) = A_k(x, ∞) of the
// kernel next to the diagonal s = r, with the smooth factor frozen at the node.
inline double diagonal_side_defect(const KernelKind& k, double h) {
  switch (k.tag) {
    case KernelTag::coulomb: return -h * h / 12.0;
    case KernelTag::yukawa: return -k.a * k.a * xcothx_minus_one(h / (2.0 * k.a));
    case KernelTag::bopp_podolsky:
      return diagonal_side_defect(KernelKind::coulomb(), h) - diagonal_side_defect(KernelKind::yukawa(k.a), h);
    case KernelTag::pure_exponential: {
      const double a = k.a;
      if (h < 0.05 * a) return -h * h * h * h / (360.0 * a);
      const double e = std::exp(-h / a);
      const double trap = h * (0.5 * a * a + a * h * e / ((1.0 - e) * (1.0 - e)) + a * a * e / (1.0 - e));
      return 2.0 * a * a * a - trap;
    }
  }
  return 0.0;
}

// Same defect for the one-sided profile s · (s k(s)) at the origin.
inline double origin_defect(const KernelKind& k, double h) {
  switch (k.tag) {
    case KernelTag::coulomb: return h * h / 12.0;
    case KernelTag::yukawa: return k.a * k.a * one_minus_x2_csch2(h / (2.0 * k.a));
    case KernelTag::bopp_podolsky:
      return origin_defect(KernelKind::coulomb(), h) - origin_defect(KernelKind::yukawa(k.a), h);
    case KernelTag::pure_exponential: {
      const double a = k.a;
      if (h < 0.05 * a) return h * h * h * h / (120.0 * a);
      const double e = std::exp(-h / a);
      return 2.0 * a * a * a - h * h * h * e * (1.0 + e) / ((1.0 - e) * (1.0 - e) * (1.0 - e));
    }
  }
  return 0.0;
}

// P_i += coefficient · ρ_i at interior nodes. On mapped meshes the quadrature is
// locally uniform in x, so both sides see the spacing h_x g'(x_i).
inline double diagonal_coefficient(const KernelKind& k, const RadialGrid& g, std::size_t i) {
  if (i == 0 || i + 1 >= g.size()) return 0.0;
  if (g.mapped()) return 4.0 * std::numbers::pi * diagonal_side_defect(k, g.local_width(i));
  return 2.0 * std::numbers::pi * (diagonal_side_defect(k, g.width(i - 1)) + diagonal_side_defect(k, g.width(i)));
}

// P(0) += coefficient · ρ_0.
inline double origin_coefficient(const KernelKind& k, const RadialGrid& g) {
  return 4.0 * std::numbers::pi * origin_defect(k, g.mapped() ? g.local_width(0) : g.width(0));
}

}  // namespace detail

/**
 * @brief P(r) = ∫ k(|x - y|) ρ(|y|) dy for a radial density ρ.
 *
 * Uses the reduction P(r) = (2π/r) ∫ s ρ(s) A_k(|r-s|, r+s) ds with the closed
 * inner integrals of KernelKind::inner_integral, discretized by the trapezoid
 * rule plus the exact trapezoid defect of the local kernel profile at s = r
 * (and at the origin), which stays valid when the screening length is below the
 * mesh width. Screened kernels are accumulated as
 * prefix/suffix sums of decaying exponentials, so the cost is O(n) and no
 * e^{+r/a} factor is ever formed.
 */
inline RadialField potential(const KernelKind& kind, const RadialField& rho) {
  kind.validate();
  if (kind.tag == KernelTag::bopp_podolsky) {
    const RadialField c = potential(KernelKind::coulomb(), rho);
    const RadialField y = potential(KernelKind::yukawa(kind.a), rho);
    return axpy(c, -1.0, y);
  }
  const auto& g = rho.grid();
  const std::size_t n = rho.size();
  const double pi = std::numbers::pi;
  const double a = kind.a;
  std::vector<double> f(n), out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) f[j] = g.weight(j) * g.node(j) * rho[j];

  switch (kind.tag) {
    case KernelTag::coulomb: {
      // A = 2 min(r, s)
      std::vector<double> suffix(n, 0.0);  // Σ_{j>i} f_j
      for (std::size_t i = n - 1; i-- > 0;) suffix[i] = suffix[i + 1] + f[i + 1];
      double prefix = 0.0;  // Σ_{j≤i} f_j s_j
      for (std::size_t i = 0; i < n; ++i) {
        prefix += f[i] * g.node(i);
        const double r = g.node(i);
        out[i] = r > 0.0 ? 4.0 * pi * (prefix / r + suffix[i]) : 4.0 * pi * suffix[i];
      }
      break;
    }
    case KernelTag::yukawa: {
      // s ≤ r: A = a e^{-(r-s)/a} (1 - e^{-2s/a});  s > r: A = a e^{-(s-r)/a} (1 - e^{-2r/a})
      std::vector<double> right(n, 0.0);
      for (std::size_t i = n - 1; i-- > 0;) {
        right[i] = (right[i + 1] + f[i + 1]) * std::exp(-g.width(i) / a);
      }
      double left = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = g.node(i);
        if (i > 0) left *= std::exp(-g.width(i - 1) / a);
        left += f[i] * -std::expm1(-2.0 * r / a);
        if (r > 0.0) {
          out[i] = 2.0 * pi * a / r * (left + right[i] * -std::expm1(-2.0 * r / a));
        } else {
          // (1 - e^{-2r/a}) / r → 2/a
          out[i] = 4.0 * pi * right[i];
        }
      }
      break;
    }
    case KernelTag::pure_exponential: {
      std::vector<double> r0(n, 0.0), r1(n, 0.0);
      for (std::size_t i = n - 1; i-- > 0;) {
        const double decay = std::exp(-g.width(i) / a);
        r0[i] = (r0[i + 1] + f[i + 1]) * decay;
        r1[i] = (r1[i + 1] + f[i + 1] * (g.node(i + 1) + a)) * decay;
      }
      double l1 = 0.0, l2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = g.node(i);
        if (i > 0) {
          const double decay = std::exp(-g.width(i - 1) / a);
          l1 *= decay;
          l2 *= decay;
        }
        const double e2 = std::exp(-2.0 * r / a);
        l1 += f[i] * -std::expm1(-2.0 * r / a);
        l2 += f[i] * r * (1.0 + e2);
        if (r > 0.0) {
          const double inner = (r + a) * l1 - l2 + -std::expm1(-2.0 * r / a) * r1[i] - r * (1.0 + e2) * r0[i];
          out[i] = 2.0 * pi * a / r * inner;
        }
      }
      break;
    }
    case KernelTag::bopp_podolsky: break;
  }

  if (g.node(0) == 0.0) {
    // dedicated origin branch: P(0) = 4π ∫ s ρ(s) [s k(s)] ds
    double s = 0.0;
    for (std::size_t j = 1; j < n; ++j) s += f[j] * kind.t_times_kernel(g.node(j));
    out[0] = 4.0 * pi * s + detail::origin_coefficient(kind, g) * rho[0];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] += detail::diagonal_coefficient(kind, g, i) * rho[i];
  return RadialField(rho.grid_ptr(), std::move(out));
}

/// ∫∫ k(|x-y|) u²(x) u²(y) dx dy via the potential route, O(n).
inline double pair_energy(const KernelKind& kind, const RadialField& u) {
  const RadialField rho = u * u;
  return radial_integral(potential(kind, rho) * rho);
}

/**
 * @brief Bilinear V_k(f, g) = 8π² ∬ r s f(r) g(s) A_k(|r-s|, r+s) dr ds, O(n²).
 *
 * Same quadrature as `potential` but summed pair by pair, so it serves as the
 * second route for pair_energy and as the bilinear form in Cauchy-Schwarz checks.
 */
inline double pair_energy_double_reduction(const KernelKind& kind, const RadialField& f, const RadialField& h) {
  kind.validate();
  detail::require_same_grid(f, h);
  const auto& g = f.grid();
  const std::size_t n = f.size();
  const double pi = std::numbers::pi;
  double total = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double ri = g.node(i);
    const double fi = g.weight(i) * ri * f[i];
    if (fi == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
      const double sj = g.node(j);
      const double hj = g.weight(j) * sj * h[j];
      if (hj == 0.0) continue;
      row += hj * kind.inner_integral(std::abs(ri - sj), ri + sj);
    }
    total += fi * row;
  }
  total *= 8.0 * pi * pi;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double ri = g.node(i);
    total += 4.0 * pi * g.weight(i) * ri * ri * detail::diagonal_coefficient(kind, g, i) * f[i] * h[i];
  }
  return total;
}

/// The three pair energies entering the functionals at screening length a.
struct PairEnergyReport {
  double v_bp = 0.0;
  double v_coulomb = 0.0;
  double w_exp = 0.0;
  double a_used = 0.0;
};

inline PairEnergyReport pair_energies(const RadialField& u, double a) {
  detail::require(a > 0.0, "pair_energies: a must be > 0");
  const RadialField rho = u * u;
  const RadialField pc = potential(KernelKind::coulomb(), rho);
  const RadialField py = potential(KernelKind::yukawa(a), rho);
  PairEnergyReport rep;
  rep.v_coulomb = radial_integral(pc * rho);
  rep.v_bp = rep.v_coulomb - radial_integral(py * rho);
  rep.w_exp = radial_integral(potential(KernelKind::pure_exponential(a), rho) * rho);
  rep.a_used = a;
  return rep;
}

/// ‖∇φ‖², ‖Δφ‖² of a potential field on the truncated domain.
struct PotentialNorms {
  double grad_sq = 0.0;
  double lap_sq = 0.0;
};

/**
 * Beyond r_max the potential is continued as the Coulomb tail φ(R) R / r, which
 * contributes 4π R φ(R)² to ‖∇φ‖² and nothing to ‖Δφ‖².
 */
inline PotentialNorms potential_norms(const RadialField& phi) {
  const auto& g = phi.grid();
  const double R = g.r_max();
  const double tail = phi[phi.size() - 1];
  PotentialNorms out;
  const RadialField d = radial_derivative(phi);
  out.grad_sq = radial_integral(d * d) + 4.0 * std::numbers::pi * R * tail * tail;
  const RadialField lap = radial_laplacian(phi);
  out.lap_sq = radial_integral(lap * lap);
  return out;
}

/// |‖∇φ‖² + a²‖Δφ‖² − 4πV| / (4πV) with φ = 𝒦ₐ ∗ u²; zero for u ≡ 0.
inline double anorm_identity_residual(const RadialField& u, double a) {
  detail::require(a > 0.0, "anorm_identity_residual: a must be > 0");
  if (u.is_zero()) return 0.0;
  const RadialField rho = u * u;
  const RadialField phi = potential(KernelKind::bopp_podolsky(a), rho);
  const double v = radial_integral(phi * rho);
  const PotentialNorms nrm = potential_norms(phi);
  const double target = 4.0 * std::numbers::pi * v;
  return std::abs(nrm.grad_sq + a * a * nrm.lap_sq - target) / target;
}

/// |‖Δφ‖² − (2π/a³) W| / ((2π/a³) W), the second-derivative identity for φ = 𝒦ₐ ∗ u².
inline double laplacian_identity_residual(const RadialField& u, double a) {
  detail::require(a > 0.0, "laplacian_identity_residual: a must be > 0");
  if (u.is_zero()) return 0.0;
  const RadialField rho = u * u;
  const RadialField phi = potential(KernelKind::bopp_podolsky(a), rho);
  const double w = radial_integral(potential(KernelKind::pure_exponential(a), rho) * rho);
  const double target = 2.0 * std::numbers::pi / (a * a * a) * w;
  return std::abs(potential_norms(phi).lap_sq - target) / target;
}

}  // namespace sbp
