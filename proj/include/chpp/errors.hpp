#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chpp {

enum class ErrorCode {
  MalformedMatrix,
  DomainError,
  KindMismatch,
  SizeMismatch,
  DimensionMismatch,
  NotButson,
  IncompatibleDimension,
  NotDephased,
  Ambiguous,
  LimitExceeded,
  BudgetExceeded,
  ParseError,
};

std::string_view error_code_name(ErrorCode code);

// Every domain failure in the library is reported as this type. The code is
// stable and is what the CLI puts in the `code` field of its error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chpp
