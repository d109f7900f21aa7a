#pragma once

#include <stdexcept>
#include <string>

namespace sbp {

/// Invalid numeric argument (grid size, exponent, screening length, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// The operation is undefined on the given input, e.g. the zero field.
class UndefinedInputError : public std::domain_error {
 public:
  explicit UndefinedInputError(const std::string& what) : std::domain_error(what) {}
};

/// The fibering derivative showed no sign change on the (extended) scan window.
class ProjectionFailure : public std::runtime_error {
 public:
  explicit ProjectionFailure(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ParameterError(msg);
}

}  // namespace detail
}  // namespace sbp
