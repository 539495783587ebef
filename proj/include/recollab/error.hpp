#pragma once

#include <stdexcept>
#include <string>

namespace recollab {

enum class ErrorCode {
  FieldMismatch,
  DimensionMismatch,
  NotFiniteDimensional,
  InvalidRelation,
  UnsupportedField,
  NotSplitBasic,
  NotIdempotent,
  AlgebraMismatch,
  InvalidAlgebra,
  InvalidModule,
  QuotientIsZero,
  DepthMismatch,
  DepthInsufficient,
  InputNotExact,
  NotDegreewiseProjective,
  BudgetExceeded,
  NotStratifying,
  NotPerfect,
  TransferFailed,
  ParseError,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace recollab
