#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace macronet {

enum class ErrorCode {
  UnknownSector,
  SchemaError,
  NegativeStock,
  DuplicatePoint,
  GapError,
  CompositeConflict,
  MissingSeries,
  MissingQuarter,
  FormatVersionError,
  CorruptStore,
  EmptySnapshot,
  ZeroDenominator,
  AlreadyAggregated,
  NonPositiveBaseline,
  InvertedWindow,
  InvalidArgument,
  PartialQuarter,  // warning only
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. `line()` is the 1-based input line for
// ingestion diagnostics and 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace macronet
