#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spineout/config.hpp"
#include "spineout/pipeline.hpp"

namespace spineout {

struct GroupAggregate {
  GroupId group = GroupId::I;
  std::size_t count = 0;  // successful cells
  double mean_acc = 0.0;
  double sd_acc = 0.0;  // sample SD across models, 0 when fewer than 2 cells
  double mean_f1 = 0.0;
  double sd_f1 = 0.0;
};

struct ModelAggregate {
  ModelId model = ModelId::GaussianNB;
  std::size_t count = 0;
  double mean_acc = 0.0;
  double mean_f1 = 0.0;
};

struct Provenance {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string timestamp;
  std::string version;
};

struct SplitSummary {
  std::size_t n = 0;
  std::size_t train = 0;
  std::size_t test = 0;
  std::size_t test_positive = 0;
};

struct ExperimentMatrix {
  std::vector<GroupId> groups;
  std::vector<ModelId> models;
  std::vector<CellResult> cells;  // model-major, in the order of `models` then `groups`
  std::vector<GroupAggregate> group_aggregates;
  std::vector<ModelAggregate> model_aggregates;
  Provenance provenance;
  SplitSummary split;
  nlohmann::json config;

  const CellResult* find(ModelId model, GroupId group) const;
};

struct MatrixRun {
  ExperimentMatrix matrix;
  std::vector<std::optional<FittedPipeline>> pipelines;  // aligned with matrix.cells
};

// Loads the CSV (default or override schema) or generates the synthetic
// dataset. Failures surface as DataSourceError.
Dataset load_data(const ExperimentConfig& config);

// Runs every requested cell on one shared stratified split (or a per-cell split
// when configured) with up to config.workers threads. The observer may be
// called concurrently when workers > 1.
MatrixRun run_matrix(const Dataset& data, const ExperimentConfig& config, const FitObserver& observer = {});
MatrixRun run_matrix(const ExperimentConfig& config, const FitObserver& observer = {});

// Per-group mean/SD over models and per-model means over groups, from the
// successful cells.
void compute_aggregates(ExperimentMatrix& matrix);

nlohmann::json to_json(const CellResult& cell);
CellResult cell_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentMatrix& matrix);
ExperimentMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace spineout
