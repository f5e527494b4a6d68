#include "spineout/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spineout/error.hpp"
#include "spineout/extra_trees.hpp"
#include "spineout/metrics.hpp"
#include "spineout/rng.hpp"

namespace spineout {

namespace {

// Row positions per class, classes ascending.
std::vector<std::pair<int, std::vector<std::size_t>>> members_by_class(std::span<const int> labels) {
  std::vector<std::pair<int, std::vector<std::size_t>>> out;
  for (const auto& [label, count] : label_counts(labels)) {
    std::vector<std::size_t> rows;
    rows.reserve(count);
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) rows.push_back(i);
    out.emplace_back(label, std::move(rows));
  }
  return out;
}

}  // namespace

SplitIndices stratified_shuffle_split(std::span<const int> labels, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    fail(ErrorCode::InvalidArgument, "test_fraction must lie in (0, 1)");
  auto classes = members_by_class(labels);
  for (const auto& [label, rows] : classes)
    if (rows.size() < 2) fail(ErrorCode::ClassTooSmall, "class " + std::to_string(label) + " has fewer than 2 rows");

  const std::size_t k = classes.size();
  std::vector<std::size_t> take(k);
  std::vector<double> remainder(k);
  std::size_t floors = 0;
  for (std::size_t c = 0; c < k; ++c) {
    const double ideal = test_fraction * static_cast<double>(classes[c].second.size());
    take[c] = static_cast<std::size_t>(std::floor(ideal));
    remainder[c] = ideal - std::floor(ideal);
    floors += take[c];
  }
  const auto target = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(labels.size())));
  std::vector<std::size_t> by_remainder(k);
  std::iota(by_remainder.begin(), by_remainder.end(), std::size_t{0});
  std::stable_sort(by_remainder.begin(), by_remainder.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; floors + i < target && i < k; ++i) ++take[by_remainder[i]];

  Rng rng(seed);
  SplitIndices split;
  for (std::size_t c = 0; c < k; ++c) {
    auto rows = classes[c].second;
    rng.shuffle(rows);
    split.test.insert(split.test.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(take[c]));
    split.train.insert(split.train.end(), rows.begin() + static_cast<std::ptrdiff_t>(take[c]), rows.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<std::size_t> FoldPlan::training_positions(std::size_t fold) const {
  std::vector<bool> held(n, false);
  for (std::size_t i : folds.at(fold)) held[i] = true;
  std::vector<std::size_t> out;
  out.reserve(n - folds[fold].size());
  for (std::size_t i = 0; i < n; ++i)
    if (!held[i]) out.push_back(i);
  return out;
}

FoldPlan stratified_kfold(std::span<const int> labels, std::size_t n_folds, std::uint64_t seed) {
  if (n_folds < 2) fail(ErrorCode::InvalidArgument, "n_folds must be >= 2");
  auto classes = members_by_class(labels);
  for (const auto& [label, rows] : classes)
    if (rows.size() < n_folds)
      fail(ErrorCode::ClassSmallerThanFolds,
           "class " + std::to_string(label) + " has fewer rows than the " + std::to_string(n_folds) + " folds");

  Rng rng(seed);
  FoldPlan plan;
  plan.n = labels.size();
  plan.folds.resize(n_folds);
  std::size_t counter = 0;
  for (auto& [label, rows] : classes) {
    rng.shuffle(rows);
    for (std::size_t r : rows) plan.folds[counter++ % n_folds].push_back(r);
  }
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  return plan;
}

std::vector<double> univariate_f_scores(const Matrix& x, std::span<const int> y) {
  if (x.rows() != y.size()) fail(ErrorCode::LengthMismatch, "label count differs from row count");
  const auto classes = members_by_class(y);
  if (classes.size() < 2) fail(ErrorCode::SingleClass, "F scores need at least two classes");
  const std::size_t n = x.rows();
  const std::size_t k = classes.size();
  if (n <= k) fail(ErrorCode::TooFewRows, "F scores need more rows than classes");

  std::vector<double> scores(x.cols(), 0.0);
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double grand = 0.0;
    for (std::size_t r = 0; r < n; ++r) grand += x(r, j);
    grand /= static_cast<double>(n);

    double ssb = 0.0;
    double ssw = 0.0;
    bool groups_constant = true;
    std::vector<double> group_value;
    for (const auto& [label, rows] : classes) {
      double mean = 0.0;
      for (std::size_t r : rows) mean += x(r, j);
      mean /= static_cast<double>(rows.size());
      ssb += static_cast<double>(rows.size()) * (mean - grand) * (mean - grand);
      for (std::size_t r : rows) {
        ssw += (x(r, j) - mean) * (x(r, j) - mean);
        groups_constant = groups_constant && x(r, j) == x(rows[0], j);
      }
      group_value.push_back(x(rows[0], j));
    }
    if (groups_constant) {
      // Exact degenerate cases: decide on the raw values, not rounded sums.
      const bool differ = std::any_of(group_value.begin(), group_value.end(),
                                      [&](double v) { return v != group_value[0]; });
      scores[j] = differ ? std::numeric_limits<double>::infinity() : 0.0;
      continue;
    }
    scores[j] = (ssb / static_cast<double>(k - 1)) / (ssw / static_cast<double>(n - k));
  }
  return scores;
}

namespace {

std::vector<std::size_t> top_m(const std::vector<double>& values, std::size_t m) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  order.resize(std::min(m, order.size()));
  return order;
}

}  // namespace

SelectionResult select_features(const Dataset& train, double keep_fraction, std::uint64_t seed) {
  if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
    fail(ErrorCode::InvalidArgument, "keep_fraction must lie in (0, 1]");
  SelectionResult out;
  out.scores = univariate_f_scores(train.x, train.y);
  out.importances = fit_extra_trees(train.x, train.y, 100, 0, seed).importances;
  const std::size_t d = train.d();
  const std::size_t m =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(keep_fraction * static_cast<double>(d) - 1e-9)));
  std::vector<bool> keep(d, false);
  for (std::size_t j : top_m(out.scores, m)) keep[j] = true;
  for (std::size_t j : top_m(out.importances, m)) keep[j] = true;
  for (std::size_t j = 0; j < d; ++j)
    if (keep[j]) out.kept.push_back(j);
  return out;
}

std::vector<ModelParams> expand_grid(const ParamGrid& grid) {
  std::vector<ModelParams> out;
  if (const auto* g = std::get_if<KnnGrid>(&grid)) {
    for (int k : g->k)
      for (Weighting w : g->weighting)
        for (Metric m : g->metric) out.emplace_back(KnnParams{k, w, m});
  } else {
    const auto& t = std::get<TreeGrid>(grid);
    for (const auto& depth : t.max_depth)
      for (Criterion c : t.criterion)
        for (int split : t.min_samples_split)
          for (int leaf : t.min_samples_leaf) out.emplace_back(TreeParams{c, depth, split, leaf});
  }
  return out;
}

nlohmann::json to_json(const ParamGrid& grid) {
  nlohmann::json j;
  if (const auto* g = std::get_if<KnnGrid>(&grid)) {
    j["k"] = g->k;
    for (Weighting w : g->weighting) j["weighting"].push_back(to_string(w));
    for (Metric m : g->metric) j["metric"].push_back(to_string(m));
  } else {
    const auto& t = std::get<TreeGrid>(grid);
    for (const auto& d : t.max_depth) j["max_depth"].push_back(d ? nlohmann::json(*d) : nlohmann::json(nullptr));
    for (Criterion c : t.criterion) j["criterion"].push_back(to_string(c));
    j["min_samples_split"] = t.min_samples_split;
    j["min_samples_leaf"] = t.min_samples_leaf;
  }
  return j;
}

namespace {

void reject_unknown(const nlohmann::json& j, std::initializer_list<std::string_view> keys, std::string_view what) {
  if (!j.is_object()) fail(ErrorCode::InvalidConfig, std::string(what) + " grid must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      fail(ErrorCode::InvalidConfig, "unknown " + std::string(what) + " grid key: " + key);
  }
}

template <typename T, typename Parse>
std::vector<T> list_of(const nlohmann::json& j, const char* key, std::vector<T> fallback, Parse parse) {
  if (!j.contains(key)) return fallback;
  const auto& arr = j.at(key);
  if (!arr.is_array() || arr.empty()) fail(ErrorCode::InvalidConfig, std::string("grid entry ") + key + " must be a non-empty list");
  std::vector<T> out;
  for (const auto& v : arr) out.push_back(parse(v));
  return out;
}

}  // namespace

KnnGrid knn_grid_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"k", "weighting", "metric"}, "KNN");
  KnnGrid defaults;
  KnnGrid g;
  g.k = list_of<int>(j, "k", defaults.k, [](const nlohmann::json& v) { return v.get<int>(); });
  g.weighting = list_of<Weighting>(j, "weighting", defaults.weighting,
                                   [](const nlohmann::json& v) { return parse_weighting(v.get<std::string>()); });
  g.metric = list_of<Metric>(j, "metric", defaults.metric,
                             [](const nlohmann::json& v) { return parse_metric(v.get<std::string>()); });
  return g;
}

TreeGrid tree_grid_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"max_depth", "criterion", "min_samples_split", "min_samples_leaf"}, "DT");
  TreeGrid defaults;
  TreeGrid g;
  g.max_depth = list_of<std::optional<int>>(j, "max_depth", defaults.max_depth, [](const nlohmann::json& v) {
    return v.is_null() ? std::optional<int>{} : std::optional<int>{v.get<int>()};
  });
  g.criterion = list_of<Criterion>(j, "criterion", defaults.criterion,
                                   [](const nlohmann::json& v) { return parse_criterion(v.get<std::string>()); });
  g.min_samples_split = list_of<int>(j, "min_samples_split", defaults.min_samples_split,
                                     [](const nlohmann::json& v) { return v.get<int>(); });
  g.min_samples_leaf = list_of<int>(j, "min_samples_leaf", defaults.min_samples_leaf,
                                    [](const nlohmann::json& v) { return v.get<int>(); });
  return g;
}

std::string_view to_string(Scoring s) { return s == Scoring::F1 ? "f1" : "accuracy"; }

Scoring parse_scoring(std::string_view text) {
  if (text == "f1") return Scoring::F1;
  if (text == "accuracy") return Scoring::Accuracy;
  fail(ErrorCode::InvalidArgument, "unknown scoring: " + std::string(text));
}

double score_fold(const Dataset& train, const ModelParams& params, const FoldPlan& folds, std::size_t fold,
                  const GridSearchOptions& options, std::size_t combination) {
  const auto fit_positions = folds.training_positions(fold);
  Dataset fit_rows = select_rows(train, fit_positions);
  if (options.resample) {
    ResamplePlan plan = *options.resample;
    plan.seed = derive_seed(options.seed, {combination, fold});
    fit_rows = oversample(fit_rows, plan);
  }
  const Dataset validation = select_rows(train, folds.folds[fold]);
  if (options.observer) {
    options.observer("grid_fit", fit_rows.origin);
    options.observer("grid_validate", validation.origin);
  }
  const TrainedClassifier clf = fit_classifier(params, fit_rows.x, fit_rows.y);
  const ConfusionMatrix cm = confusion(validation.y, predict_labels(clf, validation.x));
  return options.scoring == Scoring::F1 ? f1(cm) : accuracy(cm);
}

GridSearchResult grid_search(const Dataset& train, const ParamGrid& grid, const FoldPlan& folds,
                             const GridSearchOptions& options) {
  const auto combos = expand_grid(grid);
  if (combos.empty()) fail(ErrorCode::EmptyGrid, "parameter grid is empty");
  if (folds.n != train.n() || folds.folds.empty())
    fail(ErrorCode::InvalidArgument, "fold plan does not match the training rows");

  GridSearchResult result;
  result.table.reserve(combos.size());
  for (std::size_t c = 0; c < combos.size(); ++c) {
    CvRow row;
    row.params = combos[c];
    double sum = 0.0;
    for (std::size_t f = 0; f < folds.folds.size(); ++f) {
      double s = 0.0;
      try {
        s = score_fold(train, combos[c], folds, f, options, c);
      } catch (const Error& e) {
        if (!row.failed) row.error = e.what();
        row.failed = true;
      }
      row.fold_scores.push_back(s);
      sum += s;
    }
    row.mean = sum / static_cast<double>(folds.folds.size());
    if (c == 0 || row.mean > result.best_score) {
      result.best_index = c;
      result.best_score = row.mean;
    }
    result.table.push_back(std::move(row));
  }
  result.best = combos[result.best_index];
  return result;
}

}  // namespace spineout
