#include "spineout/error.hpp"

namespace spineout {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::EmptyAfterFiltering: return "EmptyAfterFiltering";
    case ErrorCode::MalformedCsv: return "MalformedCsv";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::ColumnMismatch: return "ColumnMismatch";
    case ErrorCode::NonIntegerCategorical: return "NonIntegerCategorical";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::NTooSmall: return "NTooSmall";
    case ErrorCode::NonPositiveSigma: return "NonPositiveSigma";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::ClassTooSmall: return "ClassTooSmall";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::NegativeFeature: return "NegativeFeature";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::EmptyCounts: return "EmptyCounts";
    case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::MinorityTooSmall: return "MinorityTooSmall";
    case ErrorCode::ClassSmallerThanFolds: return "ClassSmallerThanFolds";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonBinaryLabel: return "NonBinaryLabel";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::DataSourceError: return "DataSourceError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::MissingFeature: return "MissingFeature";
    case ErrorCode::OutOfSchemaValue: return "OutOfSchemaValue";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace spineout
