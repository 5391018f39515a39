#include "dhtk/error.hpp"

namespace dhtk {

std::string_view errorName(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::DivisionByIndistinguishableZero: return "DivisionByIndistinguishableZero";
    case ErrorCode::IndistinguishableFromZero: return "IndistinguishableFromZero";
    case ErrorCode::NegativeValuation: return "NegativeValuation";
    case ErrorCode::VariableAbsent: return "VariableAbsent";
    case ErrorCode::JetTooShort: return "JetTooShort";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::NoVanishingFactor: return "NoVanishingFactor";
    case ErrorCode::MultipleVanishingFactors: return "MultipleVanishingFactors";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::DegeneratePoint: return "DegeneratePoint";
    case ErrorCode::NotARoot: return "NotARoot";
    case ErrorCode::InsufficientJet: return "InsufficientJet";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::DominanceFailure: return "DominanceFailure";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NonTriangularPresentation: return "NonTriangularPresentation";
    case ErrorCode::UndecidedAtPrecision: return "UndecidedAtPrecision";
    case ErrorCode::RelationViolated: return "RelationViolated";
    case ErrorCode::BasisNotDeclaredSeparated: return "BasisNotDeclaredSeparated";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "UnknownError";
}

bool isInputError(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownVariable:
    case ErrorCode::UsageError:
    case ErrorCode::InvalidInput:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

SyntaxError::SyntaxError(std::size_t position, const std::string& message)
    : Error(ErrorCode::SyntaxError,
            message + " at position " + std::to_string(position)),
      position_(position) {}

}  // namespace dhtk
