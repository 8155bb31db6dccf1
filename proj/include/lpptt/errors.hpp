#pragma once

#include <stdexcept>
#include <string>

namespace lpptt {

/// Raised when inputs violate a documented precondition (bad parameter
/// domain, unusable scale, malformed rational string, ...).  The CLI maps
/// this family to exit code 2.
class parameter_error : public std::invalid_argument {
 public:
  explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a computation cannot meet its accuracy contract (quadrature
/// that failed to converge, overflowing determinant, residue checks out of
/// bounds).  The CLI maps this family to exit code 3.
class accuracy_error : public std::runtime_error {
 public:
  explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lpptt
