#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace langgen {

enum class ErrorCode {
  // Domain errors: the request is well-formed but violates a contract.
  InvalidAutomaton,
  InvalidGrammar,
  InvalidPda,
  InvalidMachine,
  AlphabetMismatch,
  EmptyInput,
  UnknownSymbol,
  InvalidArgument,
  InfiniteMemberViolation,
  InconsistentExamples,
  IndexOutOfRange,
  InvalidParams,
  OracleRequired,
  // Input errors.
  Parse,
  Io,
  // Resource caps.
  ResourceCap,
  BudgetExceeded,
  CapExceeded,
  Timeout,
};

enum class ErrorCategory { Domain, Input, Resource };

std::string_view to_string(ErrorCode code);
ErrorCategory category_of(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace langgen
