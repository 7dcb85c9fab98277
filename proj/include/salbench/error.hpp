#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace salbench {

enum class ErrorCode {
  InvalidArgument,
  // corpus
  MissingFile,
  DimensionMismatch,
  DuplicateId,
  MalformedEntry,
  OutOfBounds,
  EmptyFixationSet,
  InvalidProportions,
  // models
  DegenerateImage,
  UnreadableMap,
  NonFiniteValue,
  UnknownModel,
  // preprocess / metrics
  DegenerateMap,
  WidthTooLarge,
  EmptyGroundTruth,
  TooFewNegatives,
  EnumerationTooLarge,
  // stats
  NonFiniteScore,
  TooFewTreatments,
  TooFewBlocks,
  DegenerateAllTied,
  OutOfRange,
  TooFewPoints,
  TooFewObservations,
  ConstantMetricColumn,
  UnbalancedDegenerate,
  // bench
  MissingCategory,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the toolkit. The code is stable and is what ends up
/// in the `error` column of a score table; the message carries the detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace salbench
