#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nullboot {

enum class ErrorCode {
  DivisionByZero,
  CyclicBinding,
  InconsistentSystem,
  NonPolynomialSolution,
  IrreducibleMoment,
  SingularityNotCancelable,
  UnderdeterminedBasis,
  OrderExceeded,
  BranchAmbiguity,
  InconsistentGroundSystem,
  NoPolynomialSolution,
  ResidualFreedom,
  NonDiagonal,
  UnsupportedOrder,
  NonHermitianResult,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code);

// Every failure in the engine is reported through this one type; `code()`
// identifies the failure class and `what()` carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nullboot
