#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cifly {

enum class ErrorCode {
  kSyntaxError,
  kUnknownSymbol,
  kDuplicateDirective,
  kMissingDirective,
  kColorUsageError,
  kSignatureMismatch,
  kSetMismatch,
  kNodeOutOfRange,
  kUnknownEdgeType,
  kOverlappingSets,
  kEmptyZ,
  kStartOutsideA,
  kSizeMismatch,
  kCyclicInput,
  kDimensionMismatch,
  kTooLarge,
  kUnknownAlgo,
  kInvalidInput,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the rule-table parser. Line and column are 1-based; line 0 means
// the problem is not tied to a particular line (e.g. a missing directive).
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column,
             const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

}  // namespace cifly
