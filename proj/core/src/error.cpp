#include "macronet/error.hpp"

namespace macronet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSector: return "UnknownSector";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::NegativeStock: return "NegativeStock";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::GapError: return "GapError";
    case ErrorCode::CompositeConflict: return "CompositeConflict";
    case ErrorCode::MissingSeries: return "MissingSeries";
    case ErrorCode::MissingQuarter: return "MissingQuarter";
    case ErrorCode::FormatVersionError: return "FormatVersionError";
    case ErrorCode::CorruptStore: return "CorruptStore";
    case ErrorCode::EmptySnapshot: return "EmptySnapshot";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::AlreadyAggregated: return "AlreadyAggregated";
    case ErrorCode::NonPositiveBaseline: return "NonPositiveBaseline";
    case ErrorCode::InvertedWindow: return "InvertedWindow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PartialQuarter: return "PartialQuarter";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      line_(line) {}

}  // namespace macronet
