#pragma once

#include <stdexcept>
#include <string>

namespace jc {

enum class ErrorKind {
  IrreducibilityFailure,
  NoFourthRoot,
  CharacteristicClash,
  LevelMismatch,
  DivisionByZero,
  LatticeViolation,
  NotComposable,
  DatumMismatch,
  GradeMismatch,
  UnknownArrow,
  SaturationBoundExceeded,
  EdgeIncidenceViolation,
  PendingArcInTwoTriangles,
  ExcludedSurface,
  ThreeOrbifoldTriangle,
  CocycleViolation,
  ModeMismatch,
  ClannishConditionViolation,
  AlgebraMismatch,
  RadicalAlgorithmUnsupported,
  QuadraticUnsatisfied,
  ValidationFailed,
  VerificationFailed,
  NotIso,
  ParseError,
};

const char* error_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_name(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  const char* name() const { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace jc
