#pragma once

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "spineout/complement_nb.hpp"
#include "spineout/decision_tree.hpp"
#include "spineout/gaussian_nb.hpp"
#include "spineout/knn.hpp"

namespace spineout {

enum class Family { GaussianNB, ComplementNB, Knn, DecisionTree };

std::string_view to_string(Family f);
Family parse_family(std::string_view text);

struct GnbParams {
  friend bool operator==(const GnbParams&, const GnbParams&) = default;
};

struct CnbParams {
  double alpha = 1.0;
  bool normalize = false;
  friend bool operator==(const CnbParams&, const CnbParams&) = default;
};

struct KnnParams {
  int k = 5;
  Weighting weighting = Weighting::Uniform;
  Metric metric = Metric::Euclidean;
  friend bool operator==(const KnnParams&, const KnnParams&) = default;
};

using ModelParams = std::variant<GnbParams, CnbParams, KnnParams, TreeParams>;

Family family_of(const ModelParams& params);

// How the pipeline must scale inputs for a family: complement NB needs
// non-negative features, everything else takes standardized values.
enum class ScalingMode { Standardize, MinMax };

std::string_view to_string(ScalingMode mode);
ScalingMode parse_scaling_mode(std::string_view text);
ScalingMode required_scaling(Family family);

struct TrainedClassifier {
  std::variant<GaussianNB, ComplementNB, Knn, DecisionTree> model;
  ScalingMode scaling = ScalingMode::Standardize;

  Family family() const;
  std::size_t width() const;
};

TrainedClassifier fit_classifier(const ModelParams& params, const Matrix& x, std::span<const int> y);
Prediction predict(const TrainedClassifier& clf, std::span<const double> x);
std::vector<int> predict_labels(const TrainedClassifier& clf, const Matrix& x);

nlohmann::json to_json(const ModelParams& params);
ModelParams params_from_json(Family family, const nlohmann::json& j);

}  // namespace spineout
