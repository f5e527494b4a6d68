#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spineout/matrix.hpp"
#include "spineout/prediction.hpp"
#include "spineout/rng.hpp"

namespace spineout {

enum class Criterion { Gini, Entropy };

std::string_view to_string(Criterion c);
Criterion parse_criterion(std::string_view text);

double gini_impurity(std::span<const double> counts);
double entropy_impurity(std::span<const double> counts);
double impurity(Criterion criterion, std::span<const double> counts);

struct TreeParams {
  Criterion criterion = Criterion::Gini;
  std::optional<int> max_depth;
  int min_samples_split = 2;
  int min_samples_leaf = 1;

  friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

// Internal nodes send x[feature] <= threshold to `left`, everything else to
// `right`. Every node keeps the class counts of the samples routed to it.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::vector<double> counts;

  bool is_leaf() const noexcept { return left < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct DecisionTree {
  std::vector<int> classes;
  TreeParams params;
  std::size_t n_features = 0;
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  std::vector<double> importances;

  std::size_t width() const noexcept { return n_features; }
  int depth() const;
};

// CART with exhaustive midpoint thresholds. Score ties keep the earlier
// (feature, threshold) candidate.
DecisionTree fit_decision_tree(const Matrix& x, std::span<const int> y, const TreeParams& params = {});

// Extremely randomized variant: at each node `max_features` non-constant
// features are visited in random order, each with one threshold drawn
// uniformly in its node-local [min, max).
DecisionTree fit_randomized_tree(const Matrix& x, std::span<const int> y, const TreeParams& params,
                                 std::size_t max_features, Rng& rng);

Prediction predict(const DecisionTree& model, std::span<const double> x);

}  // namespace spineout
