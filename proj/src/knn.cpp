#include "spineout/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace spineout {

std::string_view to_string(Weighting w) { return w == Weighting::Uniform ? "uniform" : "distance"; }
std::string_view to_string(Metric m) { return m == Metric::Euclidean ? "euclidean" : "manhattan"; }

Weighting parse_weighting(std::string_view text) {
  if (text == "uniform") return Weighting::Uniform;
  if (text == "distance" || text == "inverse-distance") return Weighting::InverseDistance;
  fail(ErrorCode::InvalidArgument, "unknown weighting: " + std::string(text));
}

Metric parse_metric(std::string_view text) {
  if (text == "euclidean") return Metric::Euclidean;
  if (text == "manhattan") return Metric::Manhattan;
  fail(ErrorCode::InvalidArgument, "unknown metric: " + std::string(text));
}

double distance(Metric metric, std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  if (metric == Metric::Euclidean) {
    for (std::size_t j = 0; j < a.size(); ++j) acc += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(acc);
  }
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::fabs(a[j] - b[j]);
  return acc;
}

Knn fit_knn(const Matrix& x, std::span<const int> y, int k, Weighting weighting, Metric metric) {
  if (x.rows() != y.size()) fail(ErrorCode::LengthMismatch, "label count differs from row count");
  if (k < 1 || static_cast<std::size_t>(k) > x.rows())
    fail(ErrorCode::KOutOfRange, "k=" + std::to_string(k) + " outside [1, " + std::to_string(x.rows()) + "]");
  std::set<int> classes(y.begin(), y.end());
  return Knn{k, weighting, metric, x, {y.begin(), y.end()}, {classes.begin(), classes.end()}};
}

KnnPrediction predict_detailed(const Knn& model, std::span<const double> x) {
  check_width(model.width(), x.size());
  const std::size_t n = model.x.rows();
  std::vector<double> dist(n);
  for (std::size_t r = 0; r < n; ++r) dist[r] = distance(model.metric, x, model.x.row(r));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto k = static_cast<std::size_t>(model.k);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); });
  order.resize(k);

  const std::size_t nc = model.classes.size();
  std::vector<double> weight(nc, 0.0);
  std::vector<double> dist_sum(nc, 0.0);
  double total = 0.0;
  for (std::size_t i : order) {
    const auto c = static_cast<std::size_t>(
        std::lower_bound(model.classes.begin(), model.classes.end(), model.y[i]) - model.classes.begin());
    const double w = model.weighting == Weighting::Uniform ? 1.0 : 1.0 / (dist[i] + 1e-12);
    weight[c] += w;
    dist_sum[c] += dist[i];
    total += w;
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < nc; ++c) {
    if (weight[c] > weight[best] || (weight[c] == weight[best] && dist_sum[c] < dist_sum[best])) best = c;
  }

  KnnPrediction p;
  p.label = model.classes[best];
  p.per_class.resize(nc);
  for (std::size_t c = 0; c < nc; ++c) p.per_class[c] = weight[c] / total;
  p.score = p.per_class[best];
  p.neighbors = std::move(order);
  return p;
}

Prediction predict(const Knn& model, std::span<const double> x) { return predict_detailed(model, x); }

}  // namespace spineout
