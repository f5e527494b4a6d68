#include "spineout/pipeline.hpp"

#include <stdexcept>

#include "spineout/error.hpp"
#include "spineout/rng.hpp"

namespace spineout {

std::uint64_t group_seed(std::uint64_t master, GroupId group) {
  return derive_seed(master, {static_cast<std::uint64_t>(group)});
}

std::uint64_t cell_seed(std::uint64_t master, GroupId group, ModelId model) {
  return derive_seed(master, {static_cast<std::uint64_t>(group), 100 + static_cast<std::uint64_t>(model)});
}

std::vector<double> FittedPipeline::transform(std::span<const double> raw, Trace* trace) const {
  check_width(columns.size(), raw.size());
  std::vector<double> v(raw.begin(), raw.end());
  for (std::size_t k = 0; k < encoder.columns.size(); ++k) {
    const std::size_t j = encoder.columns[k];
    v[j] = encoder.encode(k, v[j]);
  }
  if (trace) trace->encoded = v;
  for (std::size_t k = 0; k < scaler.columns.size(); ++k) {
    const std::size_t j = scaler.columns[k];
    v[j] = scaling == ScalingMode::Standardize ? scaler.standardize(k, v[j]) : scaler.minmax(k, v[j]);
  }
  if (trace) trace->scaled = v;
  std::vector<double> out;
  out.reserve(kept.size());
  for (std::size_t j : kept) out.push_back(v[j]);
  if (trace) trace->selected = out;
  return out;
}

Prediction FittedPipeline::predict(std::span<const double> raw) const {
  return spineout::predict(classifier, transform(raw));
}

namespace {

class LeakageGuard {
 public:
  LeakageGuard(const Dataset& data, const SplitIndices& split, const FitObserver& downstream)
      : test_(data.n(), false), downstream_(downstream) {
    for (std::size_t r : split.test) test_[data.origin[r]] = true;
  }

  void operator()(std::string_view stage, std::span<const std::size_t> origin) const {
    for (std::size_t id : origin)
      if (id < test_.size() && test_[id])
        throw std::logic_error("test row " + std::to_string(id) + " reached fitting stage " + std::string(stage));
    if (downstream_) downstream_(stage, origin);
  }

 private:
  std::vector<bool> test_;
  const FitObserver& downstream_;
};

}  // namespace

CellOutcome run_cell(const Dataset& data, const VariableGroup& group, ModelId model_id, const ExperimentConfig& config,
                     const SplitIndices& split, const FitObserver& observer) {
  const ModelSpec spec = model_spec(model_id);
  CellOutcome outcome;
  CellResult& result = outcome.result;
  result.group = group.id;
  result.model = model_id;

  const LeakageGuard guard(data, split, observer);
  const std::uint64_t gseed = group_seed(config.seed, group.id);
  const std::uint64_t cseed = cell_seed(config.seed, group.id, model_id);

  try {
    const Dataset grouped = select_group(data, group);
    Dataset train = select_rows(grouped, split.train);
    Dataset test = select_rows(grouped, split.test);

    guard("encode", train.origin);
    const OrdinalEncoder encoder = fit_ordinal_encoder(train);
    train = apply_ordinal_encoder(train, encoder);
    test = apply_ordinal_encoder(test, encoder);

    const ScalingMode scaling = required_scaling(spec.family);
    guard("scale", train.origin);
    const auto scale_cols = scaling == ScalingMode::Standardize ? continuous_columns(train) : all_columns(train);
    const ScalerState scaler = fit_standardizer(train, scale_cols);
    if (scaling == ScalingMode::Standardize) {
      train = apply_standardizer(train, scaler);
      test = apply_standardizer(test, scaler);
    } else {
      train = apply_minmax(train, scaler);
      test = apply_minmax(test, scaler);
    }

    guard("select", train.origin);
    const SelectionResult selection = select_features(train, config.keep_fraction, derive_seed(gseed, {1}));
    train = select_columns(train, selection.kept);
    test = select_columns(test, selection.kept);
    for (const auto& c : train.features()) result.features.push_back(c.name);

    std::optional<ResamplePlan> plan;
    if (spec.resample) plan = ResamplePlan{*spec.resample, config.target_ratio, config.smote_k, derive_seed(cseed, {4})};

    ModelParams params = spec.defaults;
    if (spec.uses_grid) {
      const FoldPlan folds = stratified_kfold(train.y, config.n_folds, derive_seed(gseed, {2}));
      GridSearchOptions options;
      options.resample = plan;
      options.scoring = config.scoring;
      options.seed = derive_seed(cseed, {3});
      options.observer = [&guard](std::string_view stage, std::span<const std::size_t> origin) {
        guard(stage, origin);
      };
      const ParamGrid grid = spec.family == Family::Knn ? ParamGrid{config.knn_grid} : ParamGrid{config.tree_grid};
      result.cv = grid_search(train, grid, folds, options);
      params = result.cv->best;
      result.params = params;
    }

    if (plan) {
      train = oversample(train, *plan);
      guard("resample", train.origin);
    }

    guard("fit", train.origin);
    const TrainedClassifier clf = fit_classifier(params, train.x, train.y);
    result.confusion = confusion(test.y, predict_labels(clf, test.x));
    result.accuracy = accuracy(result.confusion);
    result.f1 = f1(result.confusion);
    result.macro_f1 = macro_f1(result.confusion);

    FittedPipeline p;
    p.model = model_id;
    p.group = group.id;
    p.columns = grouped.features();
    p.encoder = encoder;
    p.scaling = scaling;
    p.scaler = scaler;
    p.kept = selection.kept;
    p.params = params;
    p.classifier = clf;
    p.seed = cseed;
    p.config_hash = config_hash(config);
    outcome.pipeline = std::move(p);
  } catch (const Error& e) {
    result.error = std::string(to_string(e.code())) + ": " + e.what();
    result.accuracy = result.f1 = result.macro_f1 = 0.0;
    result.confusion = {};
  }
  return outcome;
}

}  // namespace spineout
