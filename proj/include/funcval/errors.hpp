#pragma once

#include <stdexcept>
#include <string>

namespace funcval {

enum class ErrorCode {
  DimensionMismatch,
  Unbounded,
  OriginNotInterior,
  OriginNotInDomain,
  ParameterOutOfRange,
  NotCoercive,
  Degenerate,
  EmptyResult,
  DerivativeUnavailable,
  QuadratureNotConverged,
  IllConditioned,
  NonConvexMin,
  GridBelowMin,
  ComplexityLimit,
  UnsupportedInput,
  ParseError,
};

const char* error_code_name(ErrorCode code);

class FuncvalError : public std::runtime_error {
 public:
  FuncvalError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace funcval
