#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ellfib {

enum class ErrorCode {
  NotPrime,
  ReducibleModulus,
  DegreeMismatch,
  DivisionByZero,
  FieldMismatch,
  BothZero,
  ZeroPolynomial,
  InvalidModel,
  NonPositiveN,
  NegativeDegree,
  BudgetExceeded,
  Reducible,
  SingularCurve,
  Overflow,
  Usage,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported through this type;
/// callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ellfib
