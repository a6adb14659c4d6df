#include "chpp/errors.hpp"

namespace chpp {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedMatrix: return "MalformedMatrix";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotButson: return "NotButson";
    case ErrorCode::IncompatibleDimension: return "IncompatibleDimension";
    case ErrorCode::NotDephased: return "NotDephased";
    case ErrorCode::Ambiguous: return "Ambiguous";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace chpp
