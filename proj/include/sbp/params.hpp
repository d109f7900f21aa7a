#pragma once

#include <cmath>
#include <string>

#include "sbp/error.hpp"

namespace sbp {

/// (a, q, p) of the system. a = 0 selects the Schrödinger-Poisson limit.
struct ModelParams {
  double a = 1.0;
  double q = 1.0;
  double p = 5.0;

  bool poisson_limit() const { return a == 0.0; }

  void validate() const {
    detail::require(std::isfinite(a) && a >= 0.0, "model: a must be >= 0");
    detail::require(std::isfinite(q) && q != 0.0, "model: q must be nonzero");
    detail::require(std::isfinite(p) && p > 1.0, "model: p must be > 1");
  }

  /// Ground states are only computed for 4 < p < 6.
  void validate_for_solver() const {
    validate();
    if (!(p > 4.0 && p < 6.0)) {
      throw ParameterError("model: p = " + std::to_string(p) +
                           " is outside (4,6); ground states are only supported for 4 < p < 6 "
                           "(no nontrivial solutions exist for p >= 6 or p < 12/7)");
    }
  }

  bool operator==(const ModelParams&) const = default;
};

}  // namespace sbp
