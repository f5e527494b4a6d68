#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "spineout/matrix.hpp"
#include "spineout/prediction.hpp"

namespace spineout {

enum class Weighting { Uniform, InverseDistance };
enum class Metric { Euclidean, Manhattan };

std::string_view to_string(Weighting w);
std::string_view to_string(Metric m);
Weighting parse_weighting(std::string_view text);
Metric parse_metric(std::string_view text);

double distance(Metric metric, std::span<const double> a, std::span<const double> b);

struct Knn {
  int k = 5;
  Weighting weighting = Weighting::Uniform;
  Metric metric = Metric::Euclidean;
  Matrix x;
  std::vector<int> y;
  std::vector<int> classes;

  std::size_t width() const noexcept { return x.cols(); }
};

Knn fit_knn(const Matrix& x, std::span<const int> y, int k, Weighting weighting = Weighting::Uniform,
            Metric metric = Metric::Euclidean);

struct KnnPrediction : Prediction {
  std::vector<std::size_t> neighbors;  // stored-row indices, nearest first
};

// k nearest stored rows ordered by (distance, row index). Vote weights are 1
// (uniform) or 1/(dist + 1e-12). Weight ties go to the class with the smaller
// summed neighbor distance, then to the lower label.
KnnPrediction predict_detailed(const Knn& model, std::span<const double> x);
Prediction predict(const Knn& model, std::span<const double> x);

}  // namespace spineout
