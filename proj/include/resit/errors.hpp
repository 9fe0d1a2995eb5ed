#pragma once

#include <stdexcept>
#include <string>

namespace resit {

// Failure codes surfaced by the library. Each names one exceptional situation
// a caller can act on; the CLI prints the code verbatim and maps every thrown
// Error to exit status 1 (ParseError to 2).
enum class Err {
  BadParameters,
  CharDividesN,
  CharTwo,
  CompositionDomain,
  EmptyInput,
  EmptyRange,
  FieldMismatch,
  IdentitySeries,
  InsufficientPrecision,
  NoQthRoot,
  NonUnitConstantTerm,
  NotAFixedPoint,
  NotDivisible,
  NotFiniteOrder,
  NotIntegral,
  NotInvertible,
  NotMultiple,
  NotTangentToIdentity,
  ObstructedTerm,
  OutOfRange,
  ParseError,
  PartsMismatch,
  PrecisionLoss,
  PrecisionTooSmall,
  UnsupportedField,
  ZeroDivisor,
  ZeroInversion,
  ZeroSlope,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::BadParameters: return "BadParameters";
    case Err::CharDividesN: return "CharDividesN";
    case Err::CharTwo: return "CharTwo";
    case Err::CompositionDomain: return "CompositionDomain";
    case Err::EmptyInput: return "EmptyInput";
    case Err::EmptyRange: return "EmptyRange";
    case Err::FieldMismatch: return "FieldMismatch";
    case Err::IdentitySeries: return "IdentitySeries";
    case Err::InsufficientPrecision: return "InsufficientPrecision";
    case Err::NoQthRoot: return "NoQthRoot";
    case Err::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case Err::NotAFixedPoint: return "NotAFixedPoint";
    case Err::NotDivisible: return "NotDivisible";
    case Err::NotFiniteOrder: return "NotFiniteOrder";
    case Err::NotIntegral: return "NotIntegral";
    case Err::NotInvertible: return "NotInvertible";
    case Err::NotMultiple: return "NotMultiple";
    case Err::NotTangentToIdentity: return "NotTangentToIdentity";
    case Err::ObstructedTerm: return "ObstructedTerm";
    case Err::OutOfRange: return "OutOfRange";
    case Err::ParseError: return "ParseError";
    case Err::PartsMismatch: return "PartsMismatch";
    case Err::PrecisionLoss: return "PrecisionLoss";
    case Err::PrecisionTooSmall: return "PrecisionTooSmall";
    case Err::UnsupportedField: return "UnsupportedField";
    case Err::ZeroDivisor: return "ZeroDivisor";
    case Err::ZeroInversion: return "ZeroInversion";
    case Err::ZeroSlope: return "ZeroSlope";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what, long position = -1)
      : std::runtime_error(std::string(err_name(code)) + ": " + what),
        code_(code),
        position_(position) {}

  Err code() const { return code_; }

  // Byte offset into the offending input for ParseError, -1 otherwise.
  long position() const { return position_; }

 private:
  Err code_;
  long position_;
};

[[noreturn]] inline void fail(Err code, const std::string& what, long position = -1) {
  throw Error(code, what, position);
}

}  // namespace resit
