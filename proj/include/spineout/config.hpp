#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "spineout/classifier.hpp"
#include "spineout/model_selection.hpp"
#include "spineout/resampling.hpp"
#include "spineout/schema.hpp"

namespace spineout {

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 42;

enum class ModelId { GaussianNB, ComplementNB, KNN, KNN_opt, KNN_RO, KNN_SMOTE, DT, DT_opt };

inline constexpr std::array<ModelId, 8> kAllModels = {
    ModelId::GaussianNB, ModelId::ComplementNB, ModelId::KNN, ModelId::KNN_opt,
    ModelId::KNN_RO,     ModelId::KNN_SMOTE,    ModelId::DT,  ModelId::DT_opt};

std::string_view to_string(ModelId id);
ModelId parse_model_id(std::string_view text);

struct ModelSpec {
  ModelId id;
  Family family;
  bool uses_grid = false;
  std::optional<ResampleMethod> resample;
  ModelParams defaults;
};

// The eight experiment models: plain defaults, grid-tuned variants, and tuned
// KNN with random oversampling or SMOTE.
ModelSpec model_spec(ModelId id);

struct SyntheticSource {
  std::size_t n = 244;
  std::uint64_t seed = kDefaultSeed;
  double signal = 0.8;
  double success_rate = 0.522;
};

struct CsvSource {
  std::string path;
  std::optional<std::string> schema_path;
};

using DataSource = std::variant<SyntheticSource, CsvSource>;

struct ExperimentConfig {
  DataSource data = SyntheticSource{};
  std::vector<GroupId> groups{kAllGroups.begin(), kAllGroups.end()};
  std::vector<ModelId> models{kAllModels.begin(), kAllModels.end()};
  double test_fraction = 0.25;
  std::size_t n_folds = 8;
  std::uint64_t seed = kDefaultSeed;
  KnnGrid knn_grid;
  TreeGrid tree_grid;
  double keep_fraction = 1.0;
  Scoring scoring = Scoring::F1;
  double target_ratio = 1.0;
  int smote_k = 5;
  bool per_cell_split = false;
  std::size_t workers = 1;
  std::string output_dir = "results";
  bool save_models = false;
};

void validate(const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentConfig& config);
// Rejects unknown keys (InvalidConfig) and validates the result.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

// FNV-1a over the canonical JSON of every setting that affects results
// (workers, output_dir and save_models are excluded).
std::string config_hash(const ExperimentConfig& config);

}  // namespace spineout
