#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dhtk {

enum class ErrorCode {
  // series-tower
  LevelMismatch,
  DivisionByIndistinguishableZero,
  IndistinguishableFromZero,
  NegativeValuation,
  // diffpoly
  VariableAbsent,
  JetTooShort,
  InsufficientPrecision,
  NoVanishingFactor,
  MultipleVanishingFactors,
  SyntaxError,
  UnknownVariable,
  // taylor / dh-solver
  DegeneratePoint,
  NotARoot,
  InsufficientJet,
  SingularJacobian,
  DominanceFailure,
  PrecisionExhausted,
  NonTriangularPresentation,
  UndecidedAtPrecision,
  // weil
  RelationViolated,
  BasisNotDeclaredSeparated,
  // front end
  UsageError,
  InvalidInput,
};

std::string_view errorName(ErrorCode code) noexcept;

/// True for errors caused by malformed input rather than by the mathematics.
bool isInputError(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errorName(code_); }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace dhtk
