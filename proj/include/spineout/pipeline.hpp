#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spineout/classifier.hpp"
#include "spineout/config.hpp"
#include "spineout/dataset.hpp"
#include "spineout/metrics.hpp"
#include "spineout/model_selection.hpp"
#include "spineout/preprocess.hpp"

namespace spineout {

// Preprocessing fitted on one training partition plus the final classifier.
// transform() replays encode -> scale -> select on a raw group-ordered vector.
struct FittedPipeline {
  ModelId model = ModelId::GaussianNB;
  GroupId group = GroupId::I;
  std::vector<ColumnSpec> columns;  // group columns, schema order
  OrdinalEncoder encoder;
  ScalingMode scaling = ScalingMode::Standardize;
  ScalerState scaler;
  std::vector<std::size_t> kept;
  ModelParams params;
  TrainedClassifier classifier;
  std::uint64_t seed = 0;
  std::string config_hash;

  struct Trace {
    std::vector<double> encoded;  // after ordinal encoding, all group columns
    std::vector<double> scaled;   // after scaling, all group columns
    std::vector<double> selected; // classifier input
  };

  std::vector<double> transform(std::span<const double> raw, Trace* trace = nullptr) const;
  Prediction predict(std::span<const double> raw) const;
};

struct CellResult {
  GroupId group = GroupId::I;
  ModelId model = ModelId::GaussianNB;
  std::optional<ModelParams> params;  // set for tuned models only
  double accuracy = 0.0;
  double f1 = 0.0;
  double macro_f1 = 0.0;
  ConfusionMatrix confusion;
  std::vector<std::string> features;  // selected feature names
  std::optional<GridSearchResult> cv;
  std::optional<std::string> error;

  bool ok() const { return !error.has_value(); }
};

struct CellOutcome {
  CellResult result;
  std::optional<FittedPipeline> pipeline;
};

// Seeds are derived from (config.seed, group, model), so a cell is
// reproducible on its own. Every row set handed to a fitting step is checked
// against the test rows; overlap is a logic error, not a recorded cell error.
CellOutcome run_cell(const Dataset& data, const VariableGroup& group, ModelId model, const ExperimentConfig& config,
                     const SplitIndices& split, const FitObserver& observer = {});

std::uint64_t group_seed(std::uint64_t master, GroupId group);
std::uint64_t cell_seed(std::uint64_t master, GroupId group, ModelId model);

}  // namespace spineout
