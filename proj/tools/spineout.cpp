// spineout: generate synthetic data, run the group x model matrix, re-render
// reports and score single records with a saved model.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spineout/csv.hpp"
#include "spineout/error.hpp"
#include "spineout/experiment.hpp"
#include "spineout/persistence.hpp"
#include "spineout/report.hpp"
#include "spineout/synthetic.hpp"

namespace {

using namespace spineout;

// Thrown for bad flag values that CLI11 itself cannot catch.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct GenerateArgs {
  long long n = 244;
  std::uint64_t seed = kDefaultSeed;
  double signal = 0.8;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  if (a.n < 20) throw UsageError("n must be ≥ 20 (got " + std::to_string(a.n) + ")");
  if (!(a.signal >= 0.0 && a.signal <= 1.0)) throw UsageError("signal must lie in [0, 1]");
  const Dataset data = generate_synthetic(static_cast<std::size_t>(a.n), a.seed, a.signal);
  write_csv(data, a.out);
  std::size_t success = 0;
  for (int y : data.y) success += y == 1 ? 1 : 0;
  std::printf("wrote %zu rows to %s: success %zu (%.1f%%), no-success %zu\n", data.n(), a.out.c_str(), success,
              100.0 * static_cast<double>(success) / static_cast<double>(data.n()), data.n() - success);
  return 0;
}

struct RunArgs {
  std::string config;
  std::vector<std::string> groups;
  std::vector<std::string> models;
  std::optional<long long> n;
  std::optional<std::uint64_t> seed;
  std::optional<double> signal;
  std::string csv;
  std::string schema;
  std::string out;
  std::optional<std::size_t> workers;
  bool save_models = false;
};

ExperimentConfig build_config(const RunArgs& a) {
  ExperimentConfig c;
  if (!a.config.empty()) c = load_config_file(a.config);

  const auto groups = split_list(a.groups);
  if (!groups.empty()) {
    c.groups.clear();
    for (const auto& g : groups) {
      try {
        c.groups.push_back(parse_group_id(g));
      } catch (const Error&) {
        throw UsageError("invalid group: " + g + " (expected one of I, II, III, IV, V, VI, VII)");
      }
    }
  }
  const auto models = split_list(a.models);
  if (!models.empty()) {
    c.models.clear();
    for (const auto& m : models) {
      try {
        c.models.push_back(parse_model_id(m));
      } catch (const Error&) {
        throw UsageError("invalid model: " + m);
      }
    }
  }

  if (!a.csv.empty()) {
    if (a.n || a.signal) throw UsageError("--csv cannot be combined with --n or --signal");
    CsvSource src{a.csv, std::nullopt};
    if (!a.schema.empty()) src.schema_path = a.schema;
    c.data = src;
  } else {
    if (!a.schema.empty()) throw UsageError("--schema requires --csv");
    if (a.n || a.signal || a.seed) {
      if (!std::holds_alternative<SyntheticSource>(c.data)) c.data = SyntheticSource{};
      auto& s = std::get<SyntheticSource>(c.data);
      if (a.n) {
        if (*a.n < 20) throw UsageError("n must be ≥ 20 (got " + std::to_string(*a.n) + ")");
        s.n = static_cast<std::size_t>(*a.n);
      }
      if (a.signal) s.signal = *a.signal;
      if (a.seed) s.seed = *a.seed;
    }
  }
  if (a.seed) c.seed = *a.seed;
  if (a.workers) c.workers = *a.workers;
  if (!a.out.empty()) c.output_dir = a.out;
  if (a.save_models) c.save_models = true;
  try {
    validate(c);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return c;
}

int cmd_run(const RunArgs& a) {
  const ExperimentConfig config = build_config(a);
  const MatrixRun run = run_matrix(config);
  emit_report(run.matrix, config.output_dir);

  std::size_t failed = 0;
  for (const auto& c : run.matrix.cells) {
    if (c.ok()) continue;
    ++failed;
    std::fprintf(stderr, "cell %s/%s failed: %s\n", std::string(to_string(c.model)).c_str(),
                 std::string(to_string(c.group)).c_str(), c.error->c_str());
  }
  if (config.save_models) {
    const auto dir = std::filesystem::path(config.output_dir) / "models";
    std::filesystem::create_directories(dir);
    for (const auto& p : run.pipelines) {
      if (!p) continue;
      save_model(*p, (dir / (std::string(to_string(p->model)) + "_" + std::string(to_string(p->group)) + ".json")).string());
    }
  }
  std::cout << table5_text(run.matrix);
  std::printf("%zu cells (%zu failed), results in %s\n", run.matrix.cells.size(), failed, config.output_dir.c_str());
  return 0;
}

int cmd_report(const std::string& results, const std::string& out) {
  nlohmann::json j = nlohmann::json::parse(read_file(results), nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::CorruptFile, "results file is not valid JSON: " + results);
  const ExperimentMatrix m = matrix_from_json(j);
  for (const auto& path : render_tables_and_figures(m, out)) std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& record_arg, bool trace) {
  const FittedPipeline pipeline = load_model(model_path);
  std::string text = record_arg;
  std::error_code ec;
  if (std::filesystem::is_regular_file(record_arg, ec)) text = read_file(record_arg);
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw UsageError("--record must be a JSON object or a file containing one");
  std::map<std::string, double> record;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) fail(ErrorCode::OutOfSchemaValue, "value for " + key + " is not a number");
    record[key] = value.get<double>();
  }
  const SinglePrediction p = predict_single(pipeline, record);
  nlohmann::json out = {{"label", p.label_name}, {"label_code", p.label}, {"score", p.score}};
  if (trace) out["trace"] = p.trace;
  std::cout << out.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spine-surgery outcome classification experiments"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset as CSV");
  generate->add_option("--n", gen.n, "Number of rows (>= 20)")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--signal", gen.signal, "Fraction of informative rows in [0, 1]")->capture_default_str();
  generate->add_option("--out", gen.out, "Output CSV path")->required();

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run the group x model matrix and write reports");
  run_cmd->add_option("--config", run.config, "Experiment config JSON");
  run_cmd->add_option("--groups", run.groups, "Comma-separated groups (I..VII)");
  run_cmd->add_option("--models", run.models, "Comma-separated models");
  run_cmd->add_option("--n", run.n, "Synthetic row count");
  run_cmd->add_option("--seed", run.seed, "Master seed (default 42)");
  run_cmd->add_option("--signal", run.signal, "Synthetic signal in [0, 1]");
  run_cmd->add_option("--csv", run.csv, "Load data from a CSV instead of generating it");
  run_cmd->add_option("--schema", run.schema, "Schema JSON for --csv");
  run_cmd->add_option("--out", run.out, "Output directory (default results)");
  run_cmd->add_option("--workers", run.workers, "Worker threads (default 1)");
  run_cmd->add_flag("--save-models", run.save_models, "Save every fitted cell model under <out>/models");

  std::string results_path, report_out;
  auto* report = app.add_subcommand("report", "Re-render CSV tables and SVG figures from results.json");
  report->add_option("--results", results_path, "results.json path")->required();
  report->add_option("--out", report_out, "Output directory")->required();

  std::string model_path, record_arg;
  bool trace = false;
  auto* predict = app.add_subcommand("predict", "Score one record with a saved model");
  predict->add_option("--model", model_path, "Saved model JSON")->required();
  predict->add_option("--record", record_arg, "Record as inline JSON or a JSON file path")->required();
  predict->add_flag("--trace", trace, "Include the preprocessing trace");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (run_cmd->parsed()) return cmd_run(run);
    if (report->parsed()) return cmd_report(results_path, report_out);
    if (predict->parsed()) return cmd_predict(model_path, record_arg, trace);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
