#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace sbp {

/**
 * @brief Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Butland slopes).
 *
 * No overshoot between nodes, so sign structure of the data is kept. With
 * `even_at_origin` the slope at a node placed at r = 0 is forced to zero.
 */
class MonotoneCubic {
 public:
  MonotoneCubic(std::span<const double> x, std::span<const double> y, bool even_at_origin = false)
      : x_(x.begin(), x.end()), y_(y.begin(), y.end()), d_(x.size(), 0.0) {
    const std::size_t n = x_.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      h[k] = x_[k + 1] - x_[k];
      delta[k] = (y_[k + 1] - y_[k]) / h[k];
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (delta[k - 1] * delta[k] <= 0.0) {
        d_[k] = 0.0;
      } else {
        const double w1 = 2.0 * h[k] + h[k - 1];
        const double w2 = h[k] + 2.0 * h[k - 1];
        d_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
      }
    }
    d_[0] = even_at_origin ? 0.0 : end_slope(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  double operator()(double xq) const {
    const std::size_t n = x_.size();
    if (xq <= x_.front()) return y_.front();
    if (xq >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), xq);
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - x_.begin()) - 1, n - 2);
    const double h = x_[k + 1] - x_[k];
    const double s = (xq - x_[k]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * y_[k] + h10 * h * d_[k] + h01 * y_[k + 1] + h11 * h * d_[k + 1];
  }

 private:
  // three-point end formula with the usual monotonicity clamps
  static double end_slope(double h0, double h1, double del0, double del1) {
    double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (d * del0 <= 0.0) {
      d = 0.0;
    } else if (del0 * del1 <= 0.0 && std::abs(d) > std::abs(3.0 * del0)) {
      d = 3.0 * del0;
    }
    return d;
  }

  std::vector<double> x_, y_, d_;
};

}  // namespace sbp
