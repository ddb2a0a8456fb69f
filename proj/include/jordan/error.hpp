#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jordan {

enum class ErrorCode {
  NonPrimeModulus,
  FieldMismatch,
  DivisionByZero,
  ParseError,
  AlgebraMismatch,
  ArityMismatch,
  CharacteristicUnsupported,
  EnumerationTooLarge,
  ModeUnsupported,
  NotIdempotent,
  DecompositionIncomplete,
  CarrierInfinite,
  BudgetExceeded,
  NoncommutativeDomain,
  NotDerivation,
  DerivationOfIdempotentNotHalf,
  TorsionViolation,
  PreconditionViolated,
  CarrierSizeMismatch,
  InvalidMapTable,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jordan
