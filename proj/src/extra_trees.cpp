#include "spineout/extra_trees.hpp"

#include <cmath>

namespace spineout {

ExtraTrees fit_extra_trees(const Matrix& x, std::span<const int> y, std::size_t n_trees, std::size_t max_features,
                           std::uint64_t seed) {
  if (x.rows() == 0) fail(ErrorCode::EmptyTrainingSet, "cannot fit extra trees on zero rows");
  if (n_trees < 1) fail(ErrorCode::InvalidArgument, "n_trees must be >= 1");
  ExtraTrees model;
  model.max_features =
      max_features > 0 ? max_features
                       : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(x.cols()))));
  model.importances.assign(x.cols(), 0.0);
  for (std::size_t t = 0; t < n_trees; ++t) {
    Rng rng(derive_seed(seed, {t}));
    model.trees.push_back(fit_randomized_tree(x, y, TreeParams{}, model.max_features, rng));
    for (std::size_t j = 0; j < x.cols(); ++j) model.importances[j] += model.trees.back().importances[j];
  }
  double total = 0.0;
  for (double& v : model.importances) {
    v /= static_cast<double>(n_trees);
    total += v;
  }
  if (total > 0.0)
    for (double& v : model.importances) v /= total;
  return model;
}

}  // namespace spineout
