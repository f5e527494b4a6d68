#include "spineout/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "spineout/error.hpp"

namespace spineout {

std::string_view to_string(ModelId id) {
  switch (id) {
    case ModelId::GaussianNB: return "GaussianNB";
    case ModelId::ComplementNB: return "ComplementNB";
    case ModelId::KNN: return "KNN";
    case ModelId::KNN_opt: return "KNN_opt";
    case ModelId::KNN_RO: return "KNN_RO";
    case ModelId::KNN_SMOTE: return "KNN_SMOTE";
    case ModelId::DT: return "DT";
    case ModelId::DT_opt: return "DT_opt";
  }
  return "?";
}

ModelId parse_model_id(std::string_view text) {
  for (ModelId id : kAllModels)
    if (to_string(id) == text) return id;
  fail(ErrorCode::InvalidArgument, "unknown model: " + std::string(text));
}

ModelSpec model_spec(ModelId id) {
  switch (id) {
    case ModelId::GaussianNB: return {id, Family::GaussianNB, false, std::nullopt, GnbParams{}};
    case ModelId::ComplementNB: return {id, Family::ComplementNB, false, std::nullopt, CnbParams{}};
    case ModelId::KNN: return {id, Family::Knn, false, std::nullopt, KnnParams{}};
    case ModelId::KNN_opt: return {id, Family::Knn, true, std::nullopt, KnnParams{}};
    case ModelId::KNN_RO: return {id, Family::Knn, true, ResampleMethod::RandomOver, KnnParams{}};
    case ModelId::KNN_SMOTE: return {id, Family::Knn, true, ResampleMethod::Smote, KnnParams{}};
    case ModelId::DT: return {id, Family::DecisionTree, false, std::nullopt, TreeParams{}};
    case ModelId::DT_opt: return {id, Family::DecisionTree, true, std::nullopt, TreeParams{}};
  }
  fail(ErrorCode::InvalidArgument, "unknown model");
}

void validate(const ExperimentConfig& c) {
  auto bad = [](const std::string& msg) { fail(ErrorCode::InvalidConfig, msg); };
  if (c.groups.empty()) bad("config must request at least one group");
  if (c.models.empty()) bad("config must request at least one model");
  if (std::set<GroupId>(c.groups.begin(), c.groups.end()).size() != c.groups.size()) bad("duplicate group in config");
  if (std::set<ModelId>(c.models.begin(), c.models.end()).size() != c.models.size()) bad("duplicate model in config");
  if (!(c.test_fraction > 0.0 && c.test_fraction < 1.0)) bad("test_fraction must lie in (0, 1)");
  if (c.n_folds < 2) bad("n_folds must be >= 2");
  if (!(c.keep_fraction > 0.0 && c.keep_fraction <= 1.0)) bad("keep_fraction must lie in (0, 1]");
  if (!(c.target_ratio > 0.0 && c.target_ratio <= 1.0)) bad("target_ratio must lie in (0, 1]");
  if (c.smote_k < 1) bad("smote_k must be >= 1");
  if (c.workers < 1) bad("workers must be >= 1");
  if (expand_grid(c.knn_grid).empty() || expand_grid(c.tree_grid).empty()) bad("parameter grids must be non-empty");
  for (int k : c.knn_grid.k)
    if (k < 1) bad("KNN grid k values must be >= 1");
  if (const auto* s = std::get_if<SyntheticSource>(&c.data)) {
    if (s->n < 20) bad("synthetic n must be >= 20");
    if (!(s->signal >= 0.0 && s->signal <= 1.0)) bad("synthetic signal must lie in [0, 1]");
    if (!(s->success_rate > 0.0 && s->success_rate < 1.0)) bad("synthetic success_rate must lie in (0, 1)");
  } else if (std::get<CsvSource>(c.data).path.empty()) {
    bad("csv data source needs a path");
  }
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  if (const auto* s = std::get_if<SyntheticSource>(&c.data)) {
    j["data"] = {{"synthetic",
                  {{"n", s->n}, {"seed", s->seed}, {"signal", s->signal}, {"success_rate", s->success_rate}}}};
  } else {
    const auto& csv = std::get<CsvSource>(c.data);
    j["data"] = {{"csv", csv.path}};
    if (csv.schema_path) j["data"]["schema"] = *csv.schema_path;
  }
  for (GroupId g : c.groups) j["groups"].push_back(to_string(g));
  for (ModelId m : c.models) j["models"].push_back(to_string(m));
  j["test_fraction"] = c.test_fraction;
  j["n_folds"] = c.n_folds;
  j["seed"] = c.seed;
  j["grids"] = {{"KNN", to_json(ParamGrid{c.knn_grid})}, {"DT", to_json(ParamGrid{c.tree_grid})}};
  j["keep_fraction"] = c.keep_fraction;
  j["scoring"] = to_string(c.scoring);
  j["resample"] = {{"target_ratio", c.target_ratio}, {"smote_k", c.smote_k}};
  j["per_cell_split"] = c.per_cell_split;
  j["workers"] = c.workers;
  j["output_dir"] = c.output_dir;
  j["save_models"] = c.save_models;
  return j;
}

namespace {

void only_keys(const nlohmann::json& j, std::initializer_list<std::string_view> keys, const std::string& where) {
  if (!j.is_object()) fail(ErrorCode::InvalidConfig, where + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      fail(ErrorCode::InvalidConfig, "unknown key in " + where + ": " + key);
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    only_keys(j,
              {"data", "groups", "models", "test_fraction", "n_folds", "seed", "grids", "keep_fraction", "scoring",
               "resample", "per_cell_split", "workers", "output_dir", "save_models"},
              "config");
    if (j.contains("data")) {
      const auto& d = j.at("data");
      only_keys(d, {"synthetic", "csv", "schema"}, "data");
      if (d.contains("synthetic") == d.contains("csv"))
        fail(ErrorCode::InvalidConfig, "data must name exactly one of \"synthetic\" or \"csv\"");
      if (d.contains("synthetic")) {
        const auto& s = d.at("synthetic");
        only_keys(s, {"n", "seed", "signal", "success_rate"}, "data.synthetic");
        SyntheticSource src;
        src.n = s.value("n", src.n);
        src.seed = s.value("seed", src.seed);
        src.signal = s.value("signal", src.signal);
        src.success_rate = s.value("success_rate", src.success_rate);
        c.data = src;
      } else {
        CsvSource src{d.at("csv").get<std::string>(), std::nullopt};
        if (d.contains("schema")) src.schema_path = d.at("schema").get<std::string>();
        c.data = src;
      }
    }
    if (j.contains("groups")) {
      c.groups.clear();
      for (const auto& g : j.at("groups")) c.groups.push_back(parse_group_id(g.get<std::string>()));
    }
    if (j.contains("models")) {
      c.models.clear();
      for (const auto& m : j.at("models")) c.models.push_back(parse_model_id(m.get<std::string>()));
    }
    c.test_fraction = j.value("test_fraction", c.test_fraction);
    c.n_folds = j.value("n_folds", c.n_folds);
    c.seed = j.value("seed", c.seed);
    if (j.contains("grids")) {
      const auto& g = j.at("grids");
      only_keys(g, {"KNN", "DT"}, "grids");
      if (g.contains("KNN")) c.knn_grid = knn_grid_from_json(g.at("KNN"));
      if (g.contains("DT")) c.tree_grid = tree_grid_from_json(g.at("DT"));
    }
    c.keep_fraction = j.value("keep_fraction", c.keep_fraction);
    if (j.contains("scoring")) c.scoring = parse_scoring(j.at("scoring").get<std::string>());
    if (j.contains("resample")) {
      const auto& r = j.at("resample");
      only_keys(r, {"target_ratio", "smote_k"}, "resample");
      c.target_ratio = r.value("target_ratio", c.target_ratio);
      c.smote_k = r.value("smote_k", c.smote_k);
    }
    c.per_cell_split = j.value("per_cell_split", c.per_cell_split);
    c.workers = j.value("workers", c.workers);
    c.output_dir = j.value("output_dir", c.output_dir);
    c.save_models = j.value("save_models", c.save_models);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("malformed config: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) fail(ErrorCode::InvalidConfig, e.what());
    throw;
  }
  validate(c);
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidConfig, "config file is not valid JSON: " + std::string(e.what()));
  }
  return config_from_json(j);
}

std::string config_hash(const ExperimentConfig& config) {
  nlohmann::json j = to_json(config);
  j.erase("workers");
  j.erase("output_dir");
  j.erase("save_models");
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace spineout
