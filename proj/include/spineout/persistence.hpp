#pragma once

#include <map>
#include <string>

#include "json.hpp"
#include "spineout/pipeline.hpp"

namespace spineout {

inline constexpr int kModelFormatVersion = 1;

nlohmann::json to_json(const FittedPipeline& pipeline);
// Throws VersionMismatch for an unsupported format_version and CorruptFile for
// anything structurally wrong.
FittedPipeline pipeline_from_json(const nlohmann::json& j);

void save_model(const FittedPipeline& pipeline, const std::string& path);
FittedPipeline load_model(const std::string& path);

struct SinglePrediction {
  std::string label_name;  // "success" or "no-success"
  int label = 0;
  double score = 0.0;
  nlohmann::json trace;  // encoded / scaled / selected values keyed by column
};

// `record` maps column names to raw values; extra keys are ignored.
// Throws MissingFeature for an absent group column and OutOfSchemaValue for a
// non-finite value or a categorical value outside its valid range.
SinglePrediction predict_single(const FittedPipeline& pipeline, const std::map<std::string, double>& record);

std::string label_name(int label);

}  // namespace spineout
