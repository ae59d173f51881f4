#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chromalg {

enum class ErrorCode {
  RingMismatch,
  NonzeroConstantTerm,
  NonUnitLinearTerm,
  NonNilpotentArgument,
  CapTooSmall,
  IntegralityFailure,
  NotWeierstrassReady,
  NonLocalRing,
  NotDivisible,
  ZeroDivisorDivisor,
  PivotNotCancellable,
  DivisibilityFailure,
  NotInvertibleTuple,
  NotAHomomorphism,
  RelationNotKilled,
  InvalidSubgroup,
  TupleNotVerified,
  InvalidInput,
};

constexpr std::string_view error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::NonUnitLinearTerm: return "NonUnitLinearTerm";
    case ErrorCode::NonNilpotentArgument: return "NonNilpotentArgument";
    case ErrorCode::CapTooSmall: return "CapTooSmall";
    case ErrorCode::IntegralityFailure: return "IntegralityFailure";
    case ErrorCode::NotWeierstrassReady: return "NotWeierstrassReady";
    case ErrorCode::NonLocalRing: return "NonLocalRing";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::ZeroDivisorDivisor: return "ZeroDivisorDivisor";
    case ErrorCode::PivotNotCancellable: return "PivotNotCancellable";
    case ErrorCode::DivisibilityFailure: return "DivisibilityFailure";
    case ErrorCode::NotInvertibleTuple: return "NotInvertibleTuple";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::RelationNotKilled: return "RelationNotKilled";
    case ErrorCode::InvalidSubgroup: return "InvalidSubgroup";
    case ErrorCode::TupleNotVerified: return "TupleNotVerified";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

// Every failure raised by the library. `module` names the layer that raised it
// (ring_core, series, fgl, ring_linalg, classifying, tate_blueshift, cli).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail),
        code_(code),
        module_(std::move(module)),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  const std::string& module() const noexcept { return module_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string module_;
  std::string detail_;
};

[[noreturn]] inline void raise(ErrorCode code, std::string module, const std::string& detail) {
  throw Error(code, std::move(module), detail);
}

}  // namespace chromalg
