#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "sbp/error.hpp"

namespace sbp {

/// Bopp-Podolsky kernel (1 - e^{-d/a}) / d, with the limit 1/a at d = 0.
inline double kernel_K(double a, double d) {
  detail::require(a > 0.0 && std::isfinite(a), "kernel_K: screening length a must be > 0");
  detail::require(d >= 0.0, "kernel_K: distance must be >= 0");
  if (d == 0.0) return 1.0 / a;
  return -std::expm1(-d / a) / d;
}

enum class KernelTag { coulomb, yukawa, bopp_podolsky, pure_exponential };

inline std::string_view to_string(KernelTag t) {
  switch (t) {
    case KernelTag::coulomb: return "coulomb";
    case KernelTag::yukawa: return "yukawa";
    case KernelTag::bopp_podolsky: return "bopp_podolsky";
    case KernelTag::pure_exponential: return "pure_exponential";
  }
  return "?";
}

inline KernelTag kernel_tag_from_string(std::string_view s) {
  if (s == "coulomb") return KernelTag::coulomb;
  if (s == "yukawa") return KernelTag::yukawa;
  if (s == "bopp_podolsky") return KernelTag::bopp_podolsky;
  if (s == "pure_exponential") return KernelTag::pure_exponential;
  throw ParameterError("unknown kernel '" + std::string(s) + "'");
}

namespace detail {

// y + expm1(-y) = y²/2 - y³/6 + ..., accurate for small y
inline double one_minus_exp_integral(double y) {
  if (y > 0.5) return y + std::expm1(-y);
  double term = y * y / 2.0, sum = 0.0;
  for (int k = 2; k < 30 && std::abs(term) > 1e-18 * std::abs(sum); ++k) {
    sum += term;
    term *= -y / (k + 1);
  }
  return sum;
}

// 1 - (1 + y) e^{-y} = Σ_{k≥2} (-1)^k (k-1) y^k / k!
inline double moment_exp_integral(double y) {
  if (y > 0.5) return 1.0 - (1.0 + y) * std::exp(-y);
  double pw = y * y / 2.0, sum = 0.0;  // y^k / k!
  for (int k = 2; k < 30; ++k) {
    const double term = ((k % 2 == 0) ? 1.0 : -1.0) * (k - 1) * pw;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    pw *= y / (k + 1);
  }
  return sum;
}

}  // namespace detail

/**
 * @brief One of the four radial convolution kernels and its screening length.
 *
 * - coulomb          1/t
 * - yukawa           e^{-t/a}/t
 * - bopp_podolsky    (1 - e^{-t/a})/t = coulomb - yukawa
 * - pure_exponential e^{-t/a}
 */
struct KernelKind {
  KernelTag tag = KernelTag::coulomb;
  double a = 0.0;

  static KernelKind coulomb() { return {KernelTag::coulomb, 0.0}; }
  static KernelKind yukawa(double a) { return {KernelTag::yukawa, a}; }
  static KernelKind bopp_podolsky(double a) { return {KernelTag::bopp_podolsky, a}; }
  static KernelKind pure_exponential(double a) { return {KernelTag::pure_exponential, a}; }

  bool screened() const { return tag != KernelTag::coulomb; }

  void validate() const {
    if (screened()) {
      detail::require(std::isfinite(a) && a > 0.0,
                      std::string(to_string(tag)) + " kernel needs a > 0, got a = " + std::to_string(a));
    }
  }

  /// k(t) for t > 0.
  double operator()(double t) const {
    switch (tag) {
      case KernelTag::coulomb: return 1.0 / t;
      case KernelTag::yukawa: return std::exp(-t / a) / t;
      case KernelTag::bopp_podolsky: return -std::expm1(-t / a) / t;
      case KernelTag::pure_exponential: return std::exp(-t / a);
    }
    return 0.0;
  }

  /// t k(t), finite on [0, ∞).
  double t_times_kernel(double t) const {
    switch (tag) {
      case KernelTag::coulomb: return 1.0;
      case KernelTag::yukawa: return std::exp(-t / a);
      case KernelTag::bopp_podolsky: return -std::expm1(-t / a);
      case KernelTag::pure_exponential: return t * std::exp(-t / a);
    }
    return 0.0;
  }

  /// lim_{t→0} t k(t): strength of the 1/t singularity.
  double singular_strength() const {
    return (tag == KernelTag::coulomb || tag == KernelTag::yukawa) ? 1.0 : 0.0;
  }

  /// ∫_α^β t k(t) dt in closed form, 0 ≤ α ≤ β.
  double inner_integral(double alpha, double beta) const {
    switch (tag) {
      case KernelTag::coulomb: return beta - alpha;
      case KernelTag::yukawa: return -a * std::exp(-alpha / a) * std::expm1(-(beta - alpha) / a);
      case KernelTag::bopp_podolsky:
        if (beta < a) {
          return a * (detail::one_minus_exp_integral(beta / a) - detail::one_minus_exp_integral(alpha / a));
        }
        return (beta - alpha) + a * std::exp(-alpha / a) * std::expm1(-(beta - alpha) / a);
      case KernelTag::pure_exponential:
        if (beta < a) {
          return a * a * (detail::moment_exp_integral(beta / a) - detail::moment_exp_integral(alpha / a));
        }
        return a * std::exp(-alpha / a) * ((alpha + a) - (beta + a) * std::exp(-(beta - alpha) / a));
    }
    return 0.0;
  }
};

}  // namespace sbp
