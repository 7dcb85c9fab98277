#include "salbench/error.hpp"

namespace salbench {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::MalformedEntry: return "MalformedEntry";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::EmptyFixationSet: return "EmptyFixationSet";
    case ErrorCode::InvalidProportions: return "InvalidProportions";
    case ErrorCode::DegenerateImage: return "DegenerateImage";
    case ErrorCode::UnreadableMap: return "UnreadableMap";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::DegenerateMap: return "DegenerateMap";
    case ErrorCode::WidthTooLarge: return "WidthTooLarge";
    case ErrorCode::EmptyGroundTruth: return "EmptyGroundTruth";
    case ErrorCode::TooFewNegatives: return "TooFewNegatives";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::NonFiniteScore: return "NonFiniteScore";
    case ErrorCode::TooFewTreatments: return "TooFewTreatments";
    case ErrorCode::TooFewBlocks: return "TooFewBlocks";
    case ErrorCode::DegenerateAllTied: return "DegenerateAllTied";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::TooFewObservations: return "TooFewObservations";
    case ErrorCode::ConstantMetricColumn: return "ConstantMetricColumn";
    case ErrorCode::UnbalancedDegenerate: return "UnbalancedDegenerate";
    case ErrorCode::MissingCategory: return "MissingCategory";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

}  // namespace salbench
