#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "sbp/error.hpp"
#include "sbp/functionals.hpp"

namespace sbp {

/// Log-spaced window scanned for the sign change of ζ'.
struct ScanWindow {
  double t_min = 0.1;
  double t_max = 10.0;
  std::size_t n_scan = 48;
  int max_extensions = 4;  ///< each extension halves t_min and doubles t_max

  void validate() const {
    detail::require(t_min > 0.0 && t_min < 1.0 && t_max > 1.0 && std::isfinite(t_max),
                    "scan window must satisfy 0 < t_min < 1 < t_max");
    detail::require(n_scan >= 3, "scan window needs at least 3 points");
    detail::require(max_extensions >= 0, "scan extensions must be >= 0");
  }
};

/// Unique dilation t_u putting t² u(t·) on the Nehari-Pohozaev manifold.
struct FiberingResult {
  double t_star = 1.0;
  double zeta_at_t = 0.0;  ///< ζ(t_star)
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::size_t evaluations = 0;  ///< ζ' calls
  bool unique_sign_change = false;
  double derivative_at_t = 0.0;  ///< ζ'(t_star)
  double derivative_scale = 0.0;  ///< Σ |terms of ζ'(t_star)|
  double t_min_used = 0.0;
  double t_max_used = 0.0;
};

inline std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  std::vector<double> t(n);
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) t[k] = lo * std::exp(step * static_cast<double>(k));
  t.front() = lo;
  t.back() = hi;
  return t;
}

/**
 * @brief Root of ζ' on a log-spaced scan, refined inside the first + → − bracket.
 *
 * The window grows (t_min/2, 2 t_max) until a sign change appears. The bracket
 * is refined to machine precision by TOMS 748, which alternates safeguarded
 * secant/inverse-cubic steps with bisection.
 */
inline FiberingResult project_to_manifold(const FiberInputs& in, const ScanWindow& win, double tol_root) {
  win.validate();
  detail::require(tol_root > 0.0, "projection: tol_root must be > 0");
  if (in.dirichlet == 0.0 && in.lp_p == 0.0) throw UndefinedInputError("projection: u must be nontrivial");

  FiberingResult res;
  double lo = win.t_min, hi = win.t_max;
  for (int ext = 0; ext <= win.max_extensions; ++ext) {
    const std::vector<double> ts = log_spaced(lo, hi, win.n_scan);
    std::vector<double> d(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) d[k] = fiber_derivative(in, ts[k]);
    res.evaluations += ts.size();

    int changes = 0;
    std::size_t first = ts.size();
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      const bool flip = (d[k] > 0.0 && d[k + 1] <= 0.0) || (d[k] < 0.0 && d[k + 1] >= 0.0);
      if (!flip) continue;
      ++changes;
      if (first == ts.size() && d[k] > 0.0) first = k;
    }
    if (first == ts.size()) {
      lo *= 0.5;
      hi *= 2.0;
      continue;
    }
    res.unique_sign_change = changes == 1;
    res.t_min_used = lo;
    res.t_max_used = hi;
    res.t_lo = ts[first];
    res.t_hi = ts[first + 1];

    double t;
    if (d[first + 1] == 0.0) {
      t = res.t_hi;
    } else {
      std::uintmax_t iters = 200;
      auto f = [&](double x) {
        ++res.evaluations;
        return fiber_derivative(in, x);
      };
      const auto br = boost::math::tools::toms748_solve(f, res.t_lo, res.t_hi, d[first], d[first + 1],
                                                        boost::math::tools::eps_tolerance<double>(52), iters);
      // keep the endpoint with the smaller |ζ'|
      const double fa = f(br.first), fb = f(br.second);
      t = std::abs(fa) <= std::abs(fb) ? br.first : br.second;
    }
    const FiberDerivative fd = fiber_derivative_terms(in, t);
    res.t_star = t;
    res.derivative_at_t = fd.value;
    res.derivative_scale = fd.scale;
    res.zeta_at_t = fiber_value(in, t);
    if (!(std::abs(fd.value) <= tol_root * fd.scale)) {
      throw ProjectionFailure("projection: |zeta'(t)| = " + std::to_string(std::abs(fd.value)) +
                              " above tolerance after refinement");
    }
    // the root may sit exactly on a scan node
    if (res.t_lo >= res.t_star) res.t_lo = std::nextafter(res.t_star, 0.0);
    if (res.t_hi <= res.t_star) res.t_hi = std::nextafter(res.t_star, INFINITY);
    return res;
  }
  throw ProjectionFailure("projection: no sign change of zeta' on [" + std::to_string(lo * 2.0) + ", " +
                          std::to_string(hi / 2.0) + "]");
}

inline FiberingResult project_to_manifold(const RadialField& u, const ModelParams& params,
                                          const ScanWindow& win = {}, double tol_root = 1e-10) {
  if (u.is_zero()) throw UndefinedInputError("projection: u must be nontrivial");
  params.validate();
  detail::require(params.p > 3.0, "projection: the fibering map has an interior maximum only for p > 3");
  return project_to_manifold(FiberInputs(u, params), win, tol_root);
}

/// ζ over a dense log-spaced scan, compared with ζ at the projection root.
struct MaximalityCheck {
  double zeta_at_root = 0.0;
  double scan_max = 0.0;
  double t_at_scan_max = 0.0;
  std::size_t points = 0;
  bool root_is_max = false;  ///< ζ(root) ≥ max over the scan, up to 1e−12 relative
};

inline MaximalityCheck check_maximality(const FiberInputs& in, double t_root, double t_min, double t_max,
                                        std::size_t points = 10000) {
  detail::require(t_min > 0.0 && t_max > t_min && points >= 2, "maximality: need 0 < t_min < t_max and >= 2 points");
  MaximalityCheck out;
  out.points = points;
  out.zeta_at_root = fiber_value(in, t_root);
  out.scan_max = -INFINITY;
  for (double t : log_spaced(t_min, t_max, points)) {
    const double z = fiber_value(in, t);
    if (z > out.scan_max) {
      out.scan_max = z;
      out.t_at_scan_max = t;
    }
  }
  out.root_is_max = out.zeta_at_root >= out.scan_max - 1e-12 * std::abs(out.scan_max);
  return out;
}

}  // namespace sbp
