#include "spineout/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace spineout {

std::string_view to_string(Criterion c) { return c == Criterion::Gini ? "gini" : "entropy"; }

Criterion parse_criterion(std::string_view text) {
  if (text == "gini") return Criterion::Gini;
  if (text == "entropy") return Criterion::Entropy;
  fail(ErrorCode::InvalidArgument, "unknown criterion: " + std::string(text));
}

namespace {

double total_of(std::span<const double> counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  if (!(total > 0.0)) fail(ErrorCode::EmptyCounts, "impurity of an empty node");
  return total;
}

}  // namespace

double gini_impurity(std::span<const double> counts) {
  const double total = total_of(counts);
  double sum_sq = 0.0;
  for (double c : counts) sum_sq += (c / total) * (c / total);
  return 1.0 - sum_sq;
}

double entropy_impurity(std::span<const double> counts) {
  const double total = total_of(counts);
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) {
      const double p = c / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

double impurity(Criterion criterion, std::span<const double> counts) {
  return criterion == Criterion::Gini ? gini_impurity(counts) : entropy_impurity(counts);
}

int DecisionTree::depth() const {
  std::vector<int> level(nodes.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    deepest = std::max(deepest, level[i]);
    if (!nodes[i].is_leaf()) {
      level[static_cast<std::size_t>(nodes[i].left)] = level[i] + 1;
      level[static_cast<std::size_t>(nodes[i].right)] = level[i] + 1;
    }
  }
  return deepest;
}

namespace {

struct Candidate {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double decrease = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, std::span<const int> y, const TreeParams& params, std::size_t max_features, Rng* rng)
      : x_(x), y_(y), params_(params), max_features_(max_features), rng_(rng) {
    if (x.rows() == 0) fail(ErrorCode::EmptyTrainingSet, "cannot fit a tree on zero rows");
    if (x.rows() != y.size()) fail(ErrorCode::LengthMismatch, "label count differs from row count");
    if (params.min_samples_split < 2) fail(ErrorCode::InvalidArgument, "min_samples_split must be >= 2");
    if (params.min_samples_leaf < 1) fail(ErrorCode::InvalidArgument, "min_samples_leaf must be >= 1");
    std::vector<int> labels(y.begin(), y.end());
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    tree_.classes = std::move(labels);
    tree_.params = params;
    tree_.n_features = x.cols();
    tree_.importances.assign(x.cols(), 0.0);
    class_index_.resize(y.size());
    for (std::size_t r = 0; r < y.size(); ++r)
      class_index_[r] = static_cast<std::size_t>(
          std::lower_bound(tree_.classes.begin(), tree_.classes.end(), y[r]) - tree_.classes.begin());
  }

  DecisionTree build() {
    std::vector<std::size_t> rows(x_.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    grow(rows, 0);
    double total = 0.0;
    for (double v : tree_.importances) total += v;
    if (total > 0.0)
      for (double& v : tree_.importances) v /= total;
    return std::move(tree_);
  }

 private:
  std::vector<double> counts_of(std::span<const std::size_t> rows) const {
    std::vector<double> counts(tree_.classes.size(), 0.0);
    for (std::size_t r : rows) counts[class_index_[r]] += 1.0;
    return counts;
  }

  double split_decrease(double parent, const std::vector<double>& left, const std::vector<double>& right,
                        double n_left, double n_right) const {
    const double n = n_left + n_right;
    return parent - (n_left / n) * impurity(params_.criterion, left) -
           (n_right / n) * impurity(params_.criterion, right);
  }

  Candidate best_split(std::span<const std::size_t> rows, const std::vector<double>& counts, double parent) const {
    Candidate best;
    const auto min_leaf = static_cast<double>(params_.min_samples_leaf);
    const double n = static_cast<double>(rows.size());
    std::vector<std::size_t> order(rows.begin(), rows.end());
    for (std::size_t f = 0; f < x_.cols(); ++f) {
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x_(a, f) < x_(b, f); });
      std::vector<double> left(counts.size(), 0.0);
      std::vector<double> right = counts;
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const std::size_t c = class_index_[order[i]];
        left[c] += 1.0;
        right[c] -= 1.0;
        const double lo = x_(order[i], f);
        const double hi = x_(order[i + 1], f);
        if (!(lo < hi)) continue;
        const double n_left = static_cast<double>(i + 1);
        const double n_right = n - n_left;
        if (n_left < min_leaf || n_right < min_leaf) continue;
        double threshold = lo + (hi - lo) / 2.0;
        if (threshold >= hi) threshold = lo;
        const double dec = split_decrease(parent, left, right, n_left, n_right);
        if (!best.found || dec > best.decrease) best = {true, f, threshold, dec};
      }
    }
    return best;
  }

  Candidate random_split(std::span<const std::size_t> rows, const std::vector<double>& counts, double parent) const {
    Candidate best;
    std::vector<std::size_t> features(x_.cols());
    std::iota(features.begin(), features.end(), std::size_t{0});
    rng_->shuffle(features);
    const auto min_leaf = static_cast<double>(params_.min_samples_leaf);
    std::size_t visited = 0;
    for (std::size_t f : features) {
      if (visited >= max_features_) break;
      double lo = x_(rows[0], f);
      double hi = lo;
      for (std::size_t r : rows) {
        lo = std::min(lo, x_(r, f));
        hi = std::max(hi, x_(r, f));
      }
      if (!(lo < hi)) continue;
      ++visited;
      double threshold = rng_->uniform(lo, hi);
      if (threshold >= hi) threshold = lo;
      std::vector<double> left(counts.size(), 0.0);
      double n_left = 0.0;
      for (std::size_t r : rows) {
        if (x_(r, f) <= threshold) {
          left[class_index_[r]] += 1.0;
          n_left += 1.0;
        }
      }
      std::vector<double> right(counts.size());
      for (std::size_t c = 0; c < counts.size(); ++c) right[c] = counts[c] - left[c];
      const double n_right = static_cast<double>(rows.size()) - n_left;
      if (n_left < min_leaf || n_right < min_leaf) continue;
      const double dec = split_decrease(parent, left, right, n_left, n_right);
      if (!best.found || dec > best.decrease) best = {true, f, threshold, dec};
    }
    return best;
  }

  int grow(std::vector<std::size_t>& rows, int depth) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back(TreeNode{});
    std::vector<double> counts = counts_of(rows);
    const double parent = impurity(params_.criterion, counts);
    tree_.nodes[static_cast<std::size_t>(id)].counts = counts;

    const bool can_split = parent > 0.0 && rows.size() >= static_cast<std::size_t>(params_.min_samples_split) &&
                           rows.size() >= 2 * static_cast<std::size_t>(params_.min_samples_leaf) &&
                           (!params_.max_depth || depth < *params_.max_depth);
    if (!can_split) return id;

    const Candidate split = rng_ ? random_split(rows, counts, parent) : best_split(rows, counts, parent);
    if (!split.found || !(split.decrease > 1e-12)) return id;

    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    for (std::size_t r : rows) (x_(r, split.feature) <= split.threshold ? left_rows : right_rows).push_back(r);
    tree_.importances[split.feature] += static_cast<double>(rows.size()) * split.decrease;
    rows.clear();
    rows.shrink_to_fit();

    const int left = grow(left_rows, depth + 1);
    const int right = grow(right_rows, depth + 1);
    TreeNode& node = tree_.nodes[static_cast<std::size_t>(id)];
    node.feature = static_cast<int>(split.feature);
    node.threshold = split.threshold;
    node.left = left;
    node.right = right;
    return id;
  }

  const Matrix& x_;
  std::span<const int> y_;
  TreeParams params_;
  std::size_t max_features_;
  Rng* rng_;
  std::vector<std::size_t> class_index_;
  DecisionTree tree_;
};

}  // namespace

DecisionTree fit_decision_tree(const Matrix& x, std::span<const int> y, const TreeParams& params) {
  return TreeBuilder(x, y, params, x.cols(), nullptr).build();
}

DecisionTree fit_randomized_tree(const Matrix& x, std::span<const int> y, const TreeParams& params,
                                 std::size_t max_features, Rng& rng) {
  if (max_features < 1) fail(ErrorCode::InvalidArgument, "max_features must be >= 1");
  return TreeBuilder(x, y, params, max_features, &rng).build();
}

Prediction predict(const DecisionTree& model, std::span<const double> x) {
  check_width(model.width(), x.size());
  std::size_t i = 0;
  while (!model.nodes[i].is_leaf()) {
    const TreeNode& node = model.nodes[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right);
  }
  const auto& counts = model.nodes[i].counts;
  double total = 0.0;
  std::size_t best = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    total += counts[c];
    if (counts[c] > counts[best]) best = c;
  }
  Prediction p;
  p.label = model.classes[best];
  p.per_class.resize(counts.size());
  for (std::size_t c = 0; c < counts.size(); ++c) p.per_class[c] = counts[c] / total;
  p.score = p.per_class[best];
  return p;
}

}  // namespace spineout
