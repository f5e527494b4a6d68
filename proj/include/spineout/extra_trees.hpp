#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spineout/decision_tree.hpp"

namespace spineout {

struct ExtraTrees {
  std::vector<DecisionTree> trees;
  std::size_t max_features = 1;
  std::vector<double> importances;  // mean of member importances, renormalized
};

// Grows every tree on the full training set (no bootstrap). max_features = 0
// selects ceil(sqrt(d)).
ExtraTrees fit_extra_trees(const Matrix& x, std::span<const int> y, std::size_t n_trees = 100,
                           std::size_t max_features = 0, std::uint64_t seed = 0);

}  // namespace spineout
