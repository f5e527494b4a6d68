#include "spineout/classifier.hpp"

#include <set>
#include <string>

namespace spineout {

std::vector<int> distinct_classes(std::span<const int> labels) {
  std::set<int> s(labels.begin(), labels.end());
  if (s.size() < 2) fail(ErrorCode::SingleClass, "training labels contain fewer than two classes");
  return {s.begin(), s.end()};
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::GaussianNB: return "gaussian_nb";
    case Family::ComplementNB: return "complement_nb";
    case Family::Knn: return "knn";
    case Family::DecisionTree: return "decision_tree";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  for (Family f : {Family::GaussianNB, Family::ComplementNB, Family::Knn, Family::DecisionTree})
    if (to_string(f) == text) return f;
  fail(ErrorCode::InvalidArgument, "unknown model family: " + std::string(text));
}

Family family_of(const ModelParams& params) {
  return static_cast<Family>(params.index());
}

std::string_view to_string(ScalingMode mode) { return mode == ScalingMode::Standardize ? "standardize" : "minmax"; }

ScalingMode parse_scaling_mode(std::string_view text) {
  if (text == "standardize") return ScalingMode::Standardize;
  if (text == "minmax") return ScalingMode::MinMax;
  fail(ErrorCode::InvalidArgument, "unknown scaling mode: " + std::string(text));
}

ScalingMode required_scaling(Family family) {
  return family == Family::ComplementNB ? ScalingMode::MinMax : ScalingMode::Standardize;
}

Family TrainedClassifier::family() const { return static_cast<Family>(model.index()); }

std::size_t TrainedClassifier::width() const {
  return std::visit([](const auto& m) { return m.width(); }, model);
}

TrainedClassifier fit_classifier(const ModelParams& params, const Matrix& x, std::span<const int> y) {
  TrainedClassifier out;
  out.scaling = required_scaling(family_of(params));
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, GnbParams>) {
          out.model = fit_gaussian_nb(x, y);
        } else if constexpr (std::is_same_v<P, CnbParams>) {
          out.model = fit_complement_nb(x, y, p.alpha, p.normalize);
        } else if constexpr (std::is_same_v<P, KnnParams>) {
          out.model = fit_knn(x, y, p.k, p.weighting, p.metric);
        } else {
          out.model = fit_decision_tree(x, y, p);
        }
      },
      params);
  return out;
}

Prediction predict(const TrainedClassifier& clf, std::span<const double> x) {
  return std::visit([&](const auto& m) -> Prediction { return predict(m, x); }, clf.model);
}

std::vector<int> predict_labels(const TrainedClassifier& clf, const Matrix& x) {
  std::vector<int> out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) out[r] = predict(clf, x.row(r)).label;
  return out;
}

nlohmann::json to_json(const ModelParams& params) {
  return std::visit(
      [](const auto& p) -> nlohmann::json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, GnbParams>) {
          return nlohmann::json::object();
        } else if constexpr (std::is_same_v<P, CnbParams>) {
          return {{"alpha", p.alpha}, {"normalize", p.normalize}};
        } else if constexpr (std::is_same_v<P, KnnParams>) {
          return {{"k", p.k}, {"weighting", to_string(p.weighting)}, {"metric", to_string(p.metric)}};
        } else {
          nlohmann::json j = {{"criterion", to_string(p.criterion)},
                              {"min_samples_split", p.min_samples_split},
                              {"min_samples_leaf", p.min_samples_leaf}};
          j["max_depth"] = p.max_depth ? nlohmann::json(*p.max_depth) : nlohmann::json(nullptr);
          return j;
        }
      },
      params);
}

ModelParams params_from_json(Family family, const nlohmann::json& j) {
  switch (family) {
    case Family::GaussianNB: return GnbParams{};
    case Family::ComplementNB: return CnbParams{j.value("alpha", 1.0), j.value("normalize", false)};
    case Family::Knn:
      return KnnParams{j.at("k").get<int>(), parse_weighting(j.at("weighting").get<std::string>()),
                       parse_metric(j.at("metric").get<std::string>())};
    case Family::DecisionTree: {
      TreeParams p;
      p.criterion = parse_criterion(j.at("criterion").get<std::string>());
      if (j.contains("max_depth") && !j.at("max_depth").is_null()) p.max_depth = j.at("max_depth").get<int>();
      p.min_samples_split = j.at("min_samples_split").get<int>();
      p.min_samples_leaf = j.at("min_samples_leaf").get<int>();
      return p;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown model family");
}

}  // namespace spineout
