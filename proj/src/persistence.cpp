#include "spineout/persistence.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "spineout/error.hpp"

namespace spineout {

namespace {

using nlohmann::json;

json matrix_json(const Matrix& m) { return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}}; }

Matrix matrix_from(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  auto data = j.at("data").get<std::vector<double>>();
  if (data.size() != rows * cols) fail(ErrorCode::CorruptFile, "matrix size does not match its shape");
  return Matrix(rows, cols, std::move(data));
}

json classifier_json(const TrainedClassifier& clf) {
  json j;
  j["family"] = to_string(clf.family());
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, GaussianNB>) {
          j["classes"] = m.classes;
          j["priors"] = m.priors;
          j["means"] = matrix_json(m.means);
          j["variances"] = matrix_json(m.variances);
          j["epsilon"] = m.epsilon;
        } else if constexpr (std::is_same_v<T, ComplementNB>) {
          j["classes"] = m.classes;
          j["weights"] = matrix_json(m.weights);
          j["alpha"] = m.alpha;
          j["normalize"] = m.normalize;
        } else if constexpr (std::is_same_v<T, Knn>) {
          j["k"] = m.k;
          j["weighting"] = to_string(m.weighting);
          j["metric"] = to_string(m.metric);
          j["x"] = matrix_json(m.x);
          j["y"] = m.y;
          j["classes"] = m.classes;
        } else {
          j["classes"] = m.classes;
          j["params"] = to_json(ModelParams{m.params});
          j["n_features"] = m.n_features;
          j["importances"] = m.importances;
          json nodes = json::array();
          for (const auto& n : m.nodes)
            nodes.push_back({{"feature", n.feature},
                             {"threshold", n.threshold},
                             {"left", n.left},
                             {"right", n.right},
                             {"counts", n.counts}});
          j["nodes"] = std::move(nodes);
        }
      },
      clf.model);
  return j;
}

TrainedClassifier classifier_from(const json& j) {
  TrainedClassifier clf;
  const Family family = parse_family(j.at("family").get<std::string>());
  clf.scaling = required_scaling(family);
  switch (family) {
    case Family::GaussianNB: {
      GaussianNB m;
      m.classes = j.at("classes").get<std::vector<int>>();
      m.priors = j.at("priors").get<std::vector<double>>();
      m.means = matrix_from(j.at("means"));
      m.variances = matrix_from(j.at("variances"));
      m.epsilon = j.at("epsilon").get<double>();
      if (m.priors.size() != m.classes.size() || m.means.rows() != m.classes.size() ||
          m.variances.rows() != m.classes.size() || m.variances.cols() != m.means.cols())
        fail(ErrorCode::CorruptFile, "inconsistent gaussian_nb state");
      clf.model = std::move(m);
      break;
    }
    case Family::ComplementNB: {
      ComplementNB m;
      m.classes = j.at("classes").get<std::vector<int>>();
      m.weights = matrix_from(j.at("weights"));
      m.alpha = j.at("alpha").get<double>();
      m.normalize = j.at("normalize").get<bool>();
      if (m.weights.rows() != m.classes.size()) fail(ErrorCode::CorruptFile, "inconsistent complement_nb state");
      clf.model = std::move(m);
      break;
    }
    case Family::Knn: {
      Knn m;
      m.k = j.at("k").get<int>();
      m.weighting = parse_weighting(j.at("weighting").get<std::string>());
      m.metric = parse_metric(j.at("metric").get<std::string>());
      m.x = matrix_from(j.at("x"));
      m.y = j.at("y").get<std::vector<int>>();
      m.classes = j.at("classes").get<std::vector<int>>();
      if (m.y.size() != m.x.rows() || m.k < 1 || static_cast<std::size_t>(m.k) > m.x.rows())
        fail(ErrorCode::CorruptFile, "inconsistent knn state");
      clf.model = std::move(m);
      break;
    }
    case Family::DecisionTree: {
      DecisionTree m;
      m.classes = j.at("classes").get<std::vector<int>>();
      m.params = std::get<TreeParams>(params_from_json(Family::DecisionTree, j.at("params")));
      m.n_features = j.at("n_features").get<std::size_t>();
      m.importances = j.at("importances").get<std::vector<double>>();
      for (const auto& n : j.at("nodes")) {
        TreeNode node;
        node.feature = n.at("feature").get<int>();
        node.threshold = n.at("threshold").get<double>();
        node.left = n.at("left").get<int>();
        node.right = n.at("right").get<int>();
        node.counts = n.at("counts").get<std::vector<double>>();
        m.nodes.push_back(std::move(node));
      }
      const int count = static_cast<int>(m.nodes.size());
      if (count == 0) fail(ErrorCode::CorruptFile, "decision tree without nodes");
      for (int i = 0; i < count; ++i) {
        const auto& n = m.nodes[static_cast<std::size_t>(i)];
        if (n.counts.size() != m.classes.size()) fail(ErrorCode::CorruptFile, "node class counts mismatch");
        if (n.is_leaf()) continue;
        // Children are always stored after their parent, so this also rules out cycles.
        if (n.left <= i || n.right <= i || n.left >= count || n.right >= count || n.feature < 0 ||
            static_cast<std::size_t>(n.feature) >= m.n_features)
          fail(ErrorCode::CorruptFile, "invalid tree node " + std::to_string(i));
      }
      clf.model = std::move(m);
      break;
    }
  }
  return clf;
}

}  // namespace

std::string label_name(int label) { return label == 1 ? "success" : "no-success"; }

json to_json(const FittedPipeline& p) {
  json j;
  j["format_version"] = kModelFormatVersion;
  j["model"] = to_string(p.model);
  j["group"] = to_string(p.group);
  json cols = json::array();
  for (const auto& c : p.columns) cols.push_back(to_json(c));
  j["columns"] = std::move(cols);
  j["encoder"] = {{"width", p.encoder.width}, {"columns", p.encoder.columns}, {"codes", p.encoder.codes}};
  j["scaling"] = to_string(p.scaling);
  std::vector<int> constant(p.scaler.constant.begin(), p.scaler.constant.end());
  j["scaler"] = {{"width", p.scaler.width}, {"columns", p.scaler.columns}, {"mean", p.scaler.mean},
                 {"stddev", p.scaler.stddev}, {"min", p.scaler.min},        {"max", p.scaler.max},
                 {"constant", constant}};
  j["kept"] = p.kept;
  j["params"] = to_json(p.params);
  j["classifier"] = classifier_json(p.classifier);
  j["seed"] = p.seed;
  j["config_hash"] = p.config_hash;
  return j;
}

FittedPipeline pipeline_from_json(const json& j) {
  if (!j.is_object() || !j.contains("format_version")) fail(ErrorCode::CorruptFile, "missing format_version");
  if (!j.at("format_version").is_number_integer() || j.at("format_version").get<int>() != kModelFormatVersion)
    fail(ErrorCode::VersionMismatch, "unsupported model format_version " + j.at("format_version").dump());
  try {
    FittedPipeline p;
    p.model = parse_model_id(j.at("model").get<std::string>());
    p.group = parse_group_id(j.at("group").get<std::string>());
    for (const auto& c : j.at("columns")) p.columns.push_back(column_from_json(c));
    const auto& e = j.at("encoder");
    p.encoder.width = e.at("width").get<std::size_t>();
    p.encoder.columns = e.at("columns").get<std::vector<std::size_t>>();
    p.encoder.codes = e.at("codes").get<std::vector<std::vector<double>>>();
    p.scaling = parse_scaling_mode(j.at("scaling").get<std::string>());
    const auto& s = j.at("scaler");
    p.scaler.width = s.at("width").get<std::size_t>();
    p.scaler.columns = s.at("columns").get<std::vector<std::size_t>>();
    p.scaler.mean = s.at("mean").get<std::vector<double>>();
    p.scaler.stddev = s.at("stddev").get<std::vector<double>>();
    p.scaler.min = s.at("min").get<std::vector<double>>();
    p.scaler.max = s.at("max").get<std::vector<double>>();
    for (int c : s.at("constant").get<std::vector<int>>()) p.scaler.constant.push_back(c != 0);
    p.kept = j.at("kept").get<std::vector<std::size_t>>();
    p.classifier = classifier_from(j.at("classifier"));
    p.params = params_from_json(p.classifier.family(), j.at("params"));
    p.seed = j.at("seed").get<std::uint64_t>();
    p.config_hash = j.at("config_hash").get<std::string>();

    const std::size_t width = p.columns.size();
    const std::size_t sc = p.scaler.columns.size();
    bool ok = p.encoder.width == width && p.encoder.codes.size() == p.encoder.columns.size() &&
              p.scaler.width == width && p.scaler.mean.size() == sc && p.scaler.stddev.size() == sc &&
              p.scaler.min.size() == sc && p.scaler.max.size() == sc && p.scaler.constant.size() == sc &&
              p.kept.size() == p.classifier.width();
    for (std::size_t c : p.encoder.columns) ok = ok && c < width;
    for (std::size_t c : p.scaler.columns) ok = ok && c < width;
    for (std::size_t c : p.kept) ok = ok && c < width;
    if (!ok) fail(ErrorCode::CorruptFile, "inconsistent preprocessing state");
    return p;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptFile) throw;
    fail(ErrorCode::CorruptFile, std::string("invalid model file: ") + e.what());
  } catch (const json::exception& e) {
    fail(ErrorCode::CorruptFile, std::string("invalid model file: ") + e.what());
  }
}

void save_model(const FittedPipeline& pipeline, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << to_json(pipeline).dump(2) << '\n';
  if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

FittedPipeline load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::CorruptFile, "model file is not valid JSON: " + path);
  return pipeline_from_json(j);
}

SinglePrediction predict_single(const FittedPipeline& p, const std::map<std::string, double>& record) {
  std::vector<double> raw;
  raw.reserve(p.columns.size());
  for (const auto& col : p.columns) {
    auto it = record.find(col.name);
    if (it == record.end()) fail(ErrorCode::MissingFeature, "missing feature: " + col.name);
    const double v = it->second;
    if (!std::isfinite(v)) fail(ErrorCode::OutOfSchemaValue, "non-finite value for " + col.name);
    if (col.categorical()) {
      if (v != std::floor(v)) fail(ErrorCode::OutOfSchemaValue, "non-integer value for " + col.name);
      if (col.valid_range && !col.valid_range->contains(v))
        fail(ErrorCode::OutOfSchemaValue, "value out of range for " + col.name);
    }
    raw.push_back(v);
  }
  FittedPipeline::Trace trace;
  const auto x = p.transform(raw, &trace);
  const Prediction pred = spineout::predict(p.classifier, x);

  SinglePrediction out;
  out.label = pred.label;
  out.label_name = label_name(pred.label);
  out.score = pred.score;
  json encoded = json::object(), scaled = json::object(), selected = json::object();
  for (std::size_t j = 0; j < p.columns.size(); ++j) {
    encoded[p.columns[j].name] = trace.encoded[j];
    scaled[p.columns[j].name] = trace.scaled[j];
  }
  for (std::size_t k = 0; k < p.kept.size(); ++k) selected[p.columns[p.kept[k]].name] = trace.selected[k];
  out.trace = {{"encoded", encoded}, {"scaled", scaled}, {"selected", selected}};
  return out;
}

}  // namespace spineout
