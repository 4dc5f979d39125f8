#pragma once

#include <stdexcept>
#include <string>

namespace walters {

// Validation errors map to CLI exit code 2, numerical ones to 3.
enum class ErrorKind { Validation, Numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what),
        kind_(kind),
        module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

#define WALTERS_DEFINE_ERROR(Name, Kind)                       \
  class Name : public Error {                                  \
   public:                                                     \
    Name(std::string module, const std::string& what)          \
        : Error(ErrorKind::Kind, std::move(module), what) {}   \
  };

WALTERS_DEFINE_ERROR(SpecError, Validation)
WALTERS_DEFINE_ERROR(HypothesisViolation, Validation)
WALTERS_DEFINE_ERROR(NotNonPositive, Validation)
WALTERS_DEFINE_ERROR(DomainError, Numerical)
WALTERS_DEFINE_ERROR(DivergentSeries, Numerical)
WALTERS_DEFINE_ERROR(BracketFailure, Numerical)
WALTERS_DEFINE_ERROR(NonConvergence, Numerical)
WALTERS_DEFINE_ERROR(ReductionFailure, Numerical)
WALTERS_DEFINE_ERROR(NoCandidate, Numerical)
WALTERS_DEFINE_ERROR(MultipleCandidates, Numerical)
WALTERS_DEFINE_ERROR(DegenerateFit, Numerical)

#undef WALTERS_DEFINE_ERROR

}  // namespace walters
