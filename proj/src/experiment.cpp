#include "spineout/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <mutex>
#include <thread>

#include "spineout/csv.hpp"
#include "spineout/error.hpp"
#include "spineout/rng.hpp"
#include "spineout/synthetic.hpp"

namespace spineout {

const CellResult* ExperimentMatrix::find(ModelId model, GroupId group) const {
  for (const auto& c : cells)
    if (c.model == model && c.group == group) return &c;
  return nullptr;
}

Dataset load_data(const ExperimentConfig& config) {
  try {
    if (const auto* s = std::get_if<SyntheticSource>(&config.data)) {
      SyntheticOptions options;
      options.success_rate = s->success_rate;
      return generate_synthetic(s->n, s->seed, s->signal, options);
    }
    const auto& csv = std::get<CsvSource>(config.data);
    const Schema schema = csv.schema_path ? load_schema_file(*csv.schema_path) : Schema::spine_default();
    return load_csv(csv.path, schema).data;
  } catch (const Error& e) {
    fail(ErrorCode::DataSourceError, std::string("cannot load data: ") + e.what());
  }
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

void compute_aggregates(ExperimentMatrix& matrix) {
  matrix.group_aggregates.clear();
  matrix.model_aggregates.clear();
  for (GroupId g : matrix.groups) {
    std::vector<double> acc, f;
    for (const auto& c : matrix.cells) {
      if (c.group == g && c.ok()) {
        acc.push_back(c.accuracy);
        f.push_back(c.f1);
      }
    }
    matrix.group_aggregates.push_back({g, acc.size(), mean_of(acc), sd_of(acc), mean_of(f), sd_of(f)});
  }
  for (ModelId m : matrix.models) {
    std::vector<double> acc, f;
    for (const auto& c : matrix.cells) {
      if (c.model == m && c.ok()) {
        acc.push_back(c.accuracy);
        f.push_back(c.f1);
      }
    }
    matrix.model_aggregates.push_back({m, acc.size(), mean_of(acc), mean_of(f)});
  }
}

MatrixRun run_matrix(const Dataset& data, const ExperimentConfig& config, const FitObserver& observer) {
  validate(config);
  struct Job {
    GroupId group;
    ModelId model;
  };
  std::vector<Job> jobs;
  for (ModelId m : config.models)
    for (GroupId g : config.groups) jobs.push_back({g, m});

  const SplitIndices shared = stratified_shuffle_split(data.y, config.test_fraction, config.seed);
  std::vector<CellOutcome> outcomes(jobs.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        const Job& job = jobs[i];
        const SplitIndices split =
            config.per_cell_split
                ? stratified_shuffle_split(data.y, config.test_fraction, derive_seed(cell_seed(config.seed, job.group, job.model), {5}))
                : shared;
        outcomes[i] = run_cell(data, builtin_group(job.group), job.model, config, split, observer);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::min(config.workers, jobs.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  MatrixRun run;
  ExperimentMatrix& m = run.matrix;
  m.groups = config.groups;
  m.models = config.models;
  for (auto& o : outcomes) {
    m.cells.push_back(std::move(o.result));
    run.pipelines.push_back(std::move(o.pipeline));
  }
  compute_aggregates(m);
  m.provenance = {config_hash(config), config.seed, utc_timestamp(), std::string(kVersion)};
  m.split.n = data.n();
  m.split.train = shared.train.size();
  m.split.test = shared.test.size();
  for (std::size_t r : shared.test) m.split.test_positive += data.y[r] == 1 ? 1 : 0;
  m.config = to_json(config);
  m.config.erase("workers");
  m.config.erase("output_dir");
  m.config.erase("save_models");
  return run;
}

MatrixRun run_matrix(const ExperimentConfig& config, const FitObserver& observer) {
  validate(config);
  return run_matrix(load_data(config), config, observer);
}

nlohmann::json to_json(const CellResult& cell) {
  nlohmann::json j;
  j["group"] = to_string(cell.group);
  j["model"] = to_string(cell.model);
  j["params"] = cell.params ? to_json(*cell.params) : nlohmann::json(nullptr);
  j["accuracy"] = cell.accuracy;
  j["f1"] = cell.f1;
  j["macro_f1"] = cell.macro_f1;
  j["confusion"] = {{"tp", cell.confusion.tp}, {"fp", cell.confusion.fp}, {"tn", cell.confusion.tn}, {"fn", cell.confusion.fn}};
  j["features"] = cell.features;
  j["error"] = cell.error ? nlohmann::json(*cell.error) : nlohmann::json(nullptr);
  if (cell.cv) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : cell.cv->table) {
      nlohmann::json row = {{"params", to_json(r.params)}, {"fold_scores", r.fold_scores}, {"mean", r.mean},
                            {"failed", r.failed}};
      if (r.failed) row["error"] = r.error;
      rows.push_back(std::move(row));
    }
    j["cv"] = {{"best_index", cell.cv->best_index}, {"best_score", cell.cv->best_score}, {"rows", rows}};
  } else {
    j["cv"] = nullptr;
  }
  return j;
}

CellResult cell_from_json(const nlohmann::json& j) {
  CellResult c;
  c.group = parse_group_id(j.at("group").get<std::string>());
  c.model = parse_model_id(j.at("model").get<std::string>());
  const Family family = model_spec(c.model).family;
  if (!j.at("params").is_null()) c.params = params_from_json(family, j.at("params"));
  c.accuracy = j.at("accuracy").get<double>();
  c.f1 = j.at("f1").get<double>();
  c.macro_f1 = j.at("macro_f1").get<double>();
  const auto& cm = j.at("confusion");
  c.confusion = {cm.at("tp").get<std::size_t>(), cm.at("fp").get<std::size_t>(), cm.at("tn").get<std::size_t>(),
                 cm.at("fn").get<std::size_t>()};
  c.features = j.at("features").get<std::vector<std::string>>();
  if (!j.at("error").is_null()) c.error = j.at("error").get<std::string>();
  if (!j.at("cv").is_null()) {
    GridSearchResult cv;
    const auto& jc = j.at("cv");
    cv.best_index = jc.at("best_index").get<std::size_t>();
    cv.best_score = jc.at("best_score").get<double>();
    for (const auto& r : jc.at("rows")) {
      CvRow row;
      row.params = params_from_json(family, r.at("params"));
      row.fold_scores = r.at("fold_scores").get<std::vector<double>>();
      row.mean = r.at("mean").get<double>();
      row.failed = r.at("failed").get<bool>();
      row.error = r.value("error", std::string());
      cv.table.push_back(std::move(row));
    }
    if (cv.best_index >= cv.table.size()) fail(ErrorCode::CorruptFile, "cv best_index out of range");
    cv.best = cv.table[cv.best_index].params;
    c.cv = std::move(cv);
  }
  return c;
}

nlohmann::json to_json(const ExperimentMatrix& m) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["provenance"] = {{"config_hash", m.provenance.config_hash},
                     {"seed", m.provenance.seed},
                     {"timestamp", m.provenance.timestamp},
                     {"version", m.provenance.version}};
  j["config"] = m.config;
  j["split"] = {{"n", m.split.n}, {"train", m.split.train}, {"test", m.split.test}, {"test_positive", m.split.test_positive}};
  j["groups"] = nlohmann::json::array();
  for (GroupId g : m.groups) j["groups"].push_back(to_string(g));
  j["models"] = nlohmann::json::array();
  for (ModelId id : m.models) j["models"].push_back(to_string(id));
  j["cells"] = nlohmann::json::array();
  for (const auto& c : m.cells) j["cells"].push_back(to_json(c));
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : m.group_aggregates)
    groups.push_back({{"group", to_string(g.group)}, {"count", g.count}, {"mean_acc", g.mean_acc},
                      {"sd_acc", g.sd_acc}, {"mean_f1", g.mean_f1}, {"sd_f1", g.sd_f1}});
  nlohmann::json models = nlohmann::json::array();
  for (const auto& a : m.model_aggregates)
    models.push_back({{"model", to_string(a.model)}, {"count", a.count}, {"mean_acc", a.mean_acc}, {"mean_f1", a.mean_f1}});
  j["aggregates"] = {{"groups", groups}, {"models", models}};
  return j;
}

ExperimentMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || j.value("format_version", 0) != 1)
      fail(ErrorCode::VersionMismatch, "unsupported results format_version");
    ExperimentMatrix m;
    const auto& p = j.at("provenance");
    m.provenance = {p.at("config_hash").get<std::string>(), p.at("seed").get<std::uint64_t>(),
                    p.at("timestamp").get<std::string>(), p.at("version").get<std::string>()};
    m.config = j.at("config");
    const auto& s = j.at("split");
    m.split = {s.at("n").get<std::size_t>(), s.at("train").get<std::size_t>(), s.at("test").get<std::size_t>(),
               s.at("test_positive").get<std::size_t>()};
    for (const auto& g : j.at("groups")) m.groups.push_back(parse_group_id(g.get<std::string>()));
    for (const auto& id : j.at("models")) m.models.push_back(parse_model_id(id.get<std::string>()));
    for (const auto& c : j.at("cells")) m.cells.push_back(cell_from_json(c));
    for (const auto& g : j.at("aggregates").at("groups"))
      m.group_aggregates.push_back({parse_group_id(g.at("group").get<std::string>()), g.at("count").get<std::size_t>(),
                                    g.at("mean_acc").get<double>(), g.at("sd_acc").get<double>(),
                                    g.at("mean_f1").get<double>(), g.at("sd_f1").get<double>()});
    for (const auto& a : j.at("aggregates").at("models"))
      m.model_aggregates.push_back({parse_model_id(a.at("model").get<std::string>()), a.at("count").get<std::size_t>(),
                                    a.at("mean_acc").get<double>(), a.at("mean_f1").get<double>()});
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::CorruptFile, std::string("malformed results file: ") + e.what());
  }
}

}  // namespace spineout
