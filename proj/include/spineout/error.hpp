#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spineout {

enum class ErrorCode {
  InvalidArgument,
  MissingColumn,
  EmptyAfterFiltering,
  MalformedCsv,
  OutOfRange,
  TooFewRows,
  ColumnMismatch,
  NonIntegerCategorical,
  UnknownGroup,
  NTooSmall,
  NonPositiveSigma,
  SingleClass,
  ClassTooSmall,
  WidthMismatch,
  NegativeFeature,
  KOutOfRange,
  EmptyCounts,
  EmptyTrainingSet,
  MinorityTooSmall,
  ClassSmallerThanFolds,
  EmptyGrid,
  LengthMismatch,
  NonBinaryLabel,
  EmptyMatrix,
  DataSourceError,
  InvalidConfig,
  IoError,
  VersionMismatch,
  CorruptFile,
  MissingFeature,
  OutOfSchemaValue,
};

std::string_view to_string(ErrorCode code);

// All domain failures surface as this exception; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace spineout
