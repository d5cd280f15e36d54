#pragma once

#include <stdexcept>
#include <string>

namespace fdtdlab {

/// The dispersion relation has no real propagating root for the given
/// configuration (left side exceeds the reachable maximum of the right side).
class NoRealRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root finder exhausted its iteration budget.
class NotConvergedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every point of an angle scan failed.
class AllPointsFailedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature failure rate exceeded the abort threshold.
class QuadratureFailureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the domain an analytical factor assumes.
class DomainViolationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Field magnitude blew past the divergence threshold during time stepping.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(const std::string& what, long step)
      : std::runtime_error(what), step_index(step) {}
  long step_index;
};

class SeriesTooShortError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidModeIndicesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fdtdlab
