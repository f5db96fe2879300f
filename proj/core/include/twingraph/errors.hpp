#pragma once

#include <stdexcept>
#include <string>

namespace twingraph {

// Error taxonomy shared by the library and the command line tool.
// DomainError / FormatError cover bad inputs (chart violations, malformed
// grid files, mismatched shapes); NumericError covers failures detected
// while computing (light-cone breach, non-constant curvature, divergence).

enum class NumericFailure {
  NotSpacelike,
  NotConstantCurvature,
  NoConvergence,
  InfeasibleTarget,
};

class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class FormatError : public std::runtime_error {
public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

class NumericError : public std::runtime_error {
public:
  NumericError(NumericFailure kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  NumericFailure kind() const { return kind_; }

private:
  NumericFailure kind_;
};

inline const char* failure_name(NumericFailure kind) {
  switch (kind) {
    case NumericFailure::NotSpacelike: return "not_spacelike";
    case NumericFailure::NotConstantCurvature: return "not_constant_curvature";
    case NumericFailure::NoConvergence: return "no_convergence";
    case NumericFailure::InfeasibleTarget: return "infeasible_target";
  }
  return "unknown";
}

}  // namespace twingraph
