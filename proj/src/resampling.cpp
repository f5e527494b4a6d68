#include "spineout/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "spineout/error.hpp"
#include "spineout/knn.hpp"
#include "spineout/rng.hpp"

namespace spineout {

std::string_view to_string(ResampleMethod m) { return m == ResampleMethod::RandomOver ? "random_over" : "smote"; }

ResampleMethod parse_resample_method(std::string_view text) {
  if (text == "random_over") return ResampleMethod::RandomOver;
  if (text == "smote") return ResampleMethod::Smote;
  fail(ErrorCode::InvalidArgument, "unknown resampling method: " + std::string(text));
}

namespace {

struct Balance {
  int minority_label = 0;
  std::vector<std::size_t> minority_rows;
  std::size_t needed = 0;
};

Balance plan_balance(const Dataset& train, const ResamplePlan& plan) {
  if (!(plan.target_ratio > 0.0 && plan.target_ratio <= 1.0))
    fail(ErrorCode::InvalidArgument, "target_ratio must lie in (0, 1]");
  const auto counts = label_counts(train.y);
  if (counts.size() < 2) fail(ErrorCode::SingleClass, "oversampling needs both classes present");
  if (counts.size() > 2) fail(ErrorCode::InvalidArgument, "oversampling supports binary labels only");
  const auto first = *counts.begin();
  const auto second = *std::next(counts.begin());
  // On equal counts the higher label is nominally the minority; nothing is added.
  const auto& minority = first.second < second.second ? first : second;
  const auto& majority = first.second < second.second ? second : first;

  Balance b;
  b.minority_label = minority.first;
  for (std::size_t r = 0; r < train.n(); ++r)
    if (train.y[r] == b.minority_label) b.minority_rows.push_back(r);
  // The small slack keeps products like 0.3 * 10 from rounding up to 4.
  const auto target = static_cast<std::size_t>(std::ceil(plan.target_ratio * static_cast<double>(majority.second) - 1e-9));
  b.needed = target > minority.second ? target - minority.second : 0;
  return b;
}

}  // namespace

Dataset random_oversample(const Dataset& train, const ResamplePlan& plan) {
  const Balance b = plan_balance(train, plan);
  Dataset out = train;
  Rng rng(plan.seed);
  for (std::size_t i = 0; i < b.needed; ++i) {
    const std::size_t src = b.minority_rows[rng.index(b.minority_rows.size())];
    out.x.append_row(train.x.row(src));
    out.y.push_back(b.minority_label);
    out.origin.push_back(train.origin[src]);
  }
  return out;
}

Dataset smote_oversample(const Dataset& train, const ResamplePlan& plan) {
  if (plan.smote_k < 1) fail(ErrorCode::InvalidArgument, "smote_k must be >= 1");
  const Balance b = plan_balance(train, plan);
  const std::size_t m = b.minority_rows.size();
  if (m < 2) fail(ErrorCode::MinorityTooSmall, "SMOTE needs at least 2 minority rows");
  Dataset out = train;
  if (b.needed == 0) return out;

  const std::size_t k = std::min(static_cast<std::size_t>(plan.smote_k), m - 1);
  // Neighbour lists among minority rows (positions into minority_rows).
  std::vector<std::vector<std::size_t>> neighbours(m);
  std::vector<double> dist(m);
  std::vector<std::size_t> order;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t c = 0; c < m; ++c)
      dist[c] = distance(Metric::Euclidean, train.x.row(b.minority_rows[a]), train.x.row(b.minority_rows[c]));
    order.resize(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    order.erase(order.begin() + static_cast<std::ptrdiff_t>(a));
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t p, std::size_t q) { return dist[p] < dist[q] || (dist[p] == dist[q] && p < q); });
    neighbours[a].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  }

  Rng rng(plan.seed);
  const std::size_t start = rng.index(m);
  std::vector<double> synthetic(train.d());
  for (std::size_t i = 0; i < b.needed; ++i) {
    const std::size_t a = (start + i) % m;
    const std::size_t z = neighbours[a][rng.index(k)];
    const double u = rng.uniform01();
    const auto xa = train.x.row(b.minority_rows[a]);
    const auto xz = train.x.row(b.minority_rows[z]);
    for (std::size_t j = 0; j < synthetic.size(); ++j) synthetic[j] = xa[j] + u * (xz[j] - xa[j]);
    out.x.append_row(synthetic);
    out.y.push_back(b.minority_label);
    out.origin.push_back(train.origin[b.minority_rows[a]]);
  }
  return out;
}

Dataset oversample(const Dataset& train, const ResamplePlan& plan) {
  return plan.method == ResampleMethod::RandomOver ? random_oversample(train, plan) : smote_oversample(train, plan);
}

}  // namespace spineout
