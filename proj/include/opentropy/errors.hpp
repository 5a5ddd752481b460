#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace opentropy {

enum class ErrorCode {
  DimensionMismatch,
  LengthMismatch,
  NotHermitian,
  NotStrictlyPositive,
  DomainViolation,
  IterationLimit,
  ParameterOutOfRange,
  UnknownFunction,
  DegenerateInstance,
  SinkhornNonConvergence,
  InvalidKind,
  RejectionBudgetExhausted,
  HypothesisUnmet,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library. `value()` carries the offending
// number when there is one (an eigenvalue, a norm, a parameter).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<double> value = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<double> value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  std::optional<double> value_;
};

}  // namespace opentropy
