#include "cifly/error.hpp"

namespace cifly {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownSymbol: return "UnknownSymbol";
    case ErrorCode::kDuplicateDirective: return "DuplicateDirective";
    case ErrorCode::kMissingDirective: return "MissingDirective";
    case ErrorCode::kColorUsageError: return "ColorUsageError";
    case ErrorCode::kSignatureMismatch: return "SignatureMismatch";
    case ErrorCode::kSetMismatch: return "SetMismatch";
    case ErrorCode::kNodeOutOfRange: return "NodeOutOfRange";
    case ErrorCode::kUnknownEdgeType: return "UnknownEdgeType";
    case ErrorCode::kOverlappingSets: return "OverlappingSets";
    case ErrorCode::kEmptyZ: return "EmptyZ";
    case ErrorCode::kStartOutsideA: return "StartOutsideA";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kCyclicInput: return "CyclicInput";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kUnknownAlgo: return "UnknownAlgo";
    case ErrorCode::kInvalidInput: return "InvalidInput";
  }
  return "Error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

namespace {

std::string located(std::size_t line, std::size_t column,
                    const std::string& message) {
  if (line == 0) return message;
  std::string where = "line " + std::to_string(line);
  if (column != 0) where += ", column " + std::to_string(column);
  return where + ": " + message;
}

}  // namespace

ParseError::ParseError(ErrorCode code, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(code, located(line, column, message)),
      line_(line),
      column_(column),
      detail_(message) {}

}  // namespace cifly
