#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spineout/classifier.hpp"
#include "spineout/dataset.hpp"
#include "spineout/resampling.hpp"

namespace spineout {

struct SplitIndices {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

// Per class, the test share is allotted by largest remainder so the total test
// size is round(test_fraction * n) and every class is within 1 of its
// proportional target. Members are drawn by a seeded within-class shuffle.
SplitIndices stratified_shuffle_split(std::span<const int> labels, double test_fraction = 0.25,
                                      std::uint64_t seed = 42);

struct FoldPlan {
  std::vector<std::vector<std::size_t>> folds;  // validation positions, ascending
  std::size_t n = 0;

  // Positions outside the given fold, ascending.
  std::vector<std::size_t> training_positions(std::size_t fold) const;
};

// Shuffles each class, then deals members round-robin over the folds with a
// single running counter, so fold sizes differ by at most one.
FoldPlan stratified_kfold(std::span<const int> labels, std::size_t n_folds = 8, std::uint64_t seed = 42);

// One-way ANOVA F statistic per feature over the label groups. Zero within-group
// variance gives +inf if the group means differ and 0 otherwise.
std::vector<double> univariate_f_scores(const Matrix& x, std::span<const int> y);

struct SelectionResult {
  std::vector<double> scores;
  std::vector<double> importances;
  std::vector<std::size_t> kept;  // ascending feature indices
};

// Keeps the union of the top-m features by F score and the top-m by extra-trees
// importance, m = max(1, ceil(keep_fraction * d)).
SelectionResult select_features(const Dataset& train, double keep_fraction = 1.0, std::uint64_t seed = 0);

struct KnnGrid {
  std::vector<int> k = {1, 3, 5, 7, 9, 11, 15, 21};
  std::vector<Weighting> weighting = {Weighting::Uniform, Weighting::InverseDistance};
  std::vector<Metric> metric = {Metric::Euclidean, Metric::Manhattan};
};

struct TreeGrid {
  std::vector<std::optional<int>> max_depth = {2, 3, 4, 5, 8, std::nullopt};
  std::vector<Criterion> criterion = {Criterion::Gini, Criterion::Entropy};
  std::vector<int> min_samples_split = {2, 5, 10};
  std::vector<int> min_samples_leaf = {1, 2, 5};
};

using ParamGrid = std::variant<KnnGrid, TreeGrid>;

// Cartesian product in canonical order: k (KNN) or max_depth (trees) varies
// slowest, so simpler models come first.
std::vector<ModelParams> expand_grid(const ParamGrid& grid);

nlohmann::json to_json(const ParamGrid& grid);
KnnGrid knn_grid_from_json(const nlohmann::json& j);
TreeGrid tree_grid_from_json(const nlohmann::json& j);

enum class Scoring { F1, Accuracy };
std::string_view to_string(Scoring s);
Scoring parse_scoring(std::string_view text);

struct CvRow {
  ModelParams params;
  std::vector<double> fold_scores;
  double mean = 0.0;
  bool failed = false;
  std::string error;
};

struct GridSearchResult {
  ModelParams best;
  std::size_t best_index = 0;
  double best_score = 0.0;
  std::vector<CvRow> table;
};

// Called with the origin ids of every row handed to a fit or resampling step.
using FitObserver = std::function<void(std::string_view stage, std::span<const std::size_t> origin)>;

struct GridSearchOptions {
  std::optional<ResamplePlan> resample;  // applied to the training folds only
  Scoring scoring = Scoring::F1;
  std::uint64_t seed = 0;  // per-(combination, fold) resampling streams derive from it
  FitObserver observer;
};

// Exhaustive search; best = highest mean fold score, ties to the earliest
// combination. A combination that throws on a fold scores 0 there and is
// flagged.
GridSearchResult grid_search(const Dataset& train, const ParamGrid& grid, const FoldPlan& folds,
                             const GridSearchOptions& options = {});

// Score of one combination on one fold, as used by grid_search.
double score_fold(const Dataset& train, const ModelParams& params, const FoldPlan& folds, std::size_t fold,
                  const GridSearchOptions& options, std::size_t combination);

}  // namespace spineout
