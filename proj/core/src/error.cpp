#include "langgen/error.hpp"

namespace langgen {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidAutomaton: return "InvalidAutomaton";
    case ErrorCode::InvalidGrammar: return "InvalidGrammar";
    case ErrorCode::InvalidPda: return "InvalidPda";
    case ErrorCode::InvalidMachine: return "InvalidMachine";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InfiniteMemberViolation: return "InfiniteMemberViolation";
    case ErrorCode::InconsistentExamples: return "InconsistentExamples";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::OracleRequired: return "OracleRequired";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::ResourceCap: return "ResourceCap";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::Timeout: return "Timeout";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::Io:
      return ErrorCategory::Input;
    case ErrorCode::ResourceCap:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::CapExceeded:
    case ErrorCode::Timeout:
      return ErrorCategory::Resource;
    default:
      return ErrorCategory::Domain;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace langgen
