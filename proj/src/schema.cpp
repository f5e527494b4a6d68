#include "spineout/schema.hpp"

#include <fstream>
#include <set>

#include "spineout/error.hpp"

namespace spineout {

std::string_view to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::Continuous: return "continuous";
    case ColumnKind::Ordinal: return "ordinal";
    case ColumnKind::Binary: return "binary";
  }
  return "continuous";
}

std::string_view to_string(ColumnRole role) {
  switch (role) {
    case ColumnRole::Socioeconomic: return "socioeconomic";
    case ColumnRole::Psychometric: return "psychometric";
    case ColumnRole::Analytical: return "analytical";
    case ColumnRole::Presurgical: return "presurgical";
    case ColumnRole::Postoperative: return "postoperative";
    case ColumnRole::Satisfaction: return "satisfaction";
    case ColumnRole::Outcome: return "outcome";
  }
  return "presurgical";
}

ColumnKind parse_column_kind(std::string_view text) {
  if (text == "continuous") return ColumnKind::Continuous;
  if (text == "ordinal" || text == "ordinal-categorical") return ColumnKind::Ordinal;
  if (text == "binary") return ColumnKind::Binary;
  fail(ErrorCode::InvalidArgument, "unknown column kind: " + std::string(text));
}

ColumnRole parse_column_role(std::string_view text) {
  for (ColumnRole role : {ColumnRole::Socioeconomic, ColumnRole::Psychometric, ColumnRole::Analytical,
                          ColumnRole::Presurgical, ColumnRole::Postoperative, ColumnRole::Satisfaction,
                          ColumnRole::Outcome}) {
    if (to_string(role) == text) return role;
  }
  fail(ErrorCode::InvalidArgument, "unknown column role: " + std::string(text));
}

Schema::Schema(std::vector<ColumnSpec> columns) : columns_(std::move(columns)) {
  std::set<std::string> seen;
  std::optional<std::size_t> outcome;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    const ColumnSpec& c = columns_[i];
    if (c.name.empty()) fail(ErrorCode::InvalidArgument, "schema column with empty name");
    if (!seen.insert(c.name).second) fail(ErrorCode::InvalidArgument, "duplicate schema column: " + c.name);
    if (c.valid_range && c.valid_range->min > c.valid_range->max)
      fail(ErrorCode::InvalidArgument, "column " + c.name + " has min > max");
    if (c.role == ColumnRole::Outcome) {
      if (outcome) fail(ErrorCode::InvalidArgument, "schema has more than one outcome column");
      outcome = i;
    }
  }
  if (!outcome) fail(ErrorCode::InvalidArgument, "schema has no outcome column");
  outcome_index_ = *outcome;
}

Schema Schema::spine_default() {
  using K = ColumnKind;
  using R = ColumnRole;
  auto col = [](std::string name, K kind, double lo, double hi, R role) {
    return ColumnSpec{std::move(name), kind, ValueRange{lo, hi}, role};
  };
  // AGE, BMI, LEVELS, MSPQ and ZUNG are "numerical" in the source table; the
  // ranges below bound the synthetic generator. Analytical ranges are the
  // clinical reference intervals.
  return Schema({
      col("GEN", K::Binary, 0, 1, R::Socioeconomic),
      col("AGE", K::Continuous, 18, 90, R::Socioeconomic),
      col("BMI", K::Continuous, 15, 50, R::Presurgical),
      col("LEVELS", K::Continuous, 1, 5, R::Presurgical),
      col("EMP_ST", K::Ordinal, 1, 13, R::Socioeconomic),
      col("MSPQ", K::Continuous, 0, 39, R::Psychometric),
      col("ZUNG", K::Continuous, 20, 80, R::Psychometric),
      col("DRAM", K::Ordinal, 0, 3, R::Psychometric),
      col("PRE_LUMBAR_EVA", K::Continuous, 0, 10, R::Presurgical),
      col("PRE_LEG_EVA", K::Continuous, 0, 10, R::Presurgical),
      col("M6_LUMBAR_EVA", K::Continuous, 0, 10, R::Postoperative),
      col("M6_LEG_EVA", K::Continuous, 0, 10, R::Postoperative),
      col("PRE_ODI", K::Continuous, 0, 100, R::Presurgical),
      col("M6_POST_ODI", K::Continuous, 0, 100, R::Postoperative),
      col("SAT_SURGICAL_PROC", K::Ordinal, 0, 4, R::Satisfaction),
      col("SAT_PAIN_PRE", K::Ordinal, 0, 4, R::Satisfaction),
      col("SAT_SURGICAL_6M", K::Ordinal, 0, 4, R::Satisfaction),
      col("SAT_PAIN_6M", K::Ordinal, 0, 4, R::Satisfaction),
      col("SUCCESS", K::Binary, 0, 1, R::Outcome),
      col("GLU", K::Continuous, 70, 110, R::Analytical),
      col("UREA", K::Continuous, 16, 49, R::Analytical),
      col("URIC_ACID", K::Continuous, 2.4, 5.7, R::Analytical),
      col("CREAT", K::Continuous, 0.5, 0.9, R::Analytical),
      col("CHOL", K::Continuous, 200, 250, R::Analytical),
  });
}

std::optional<std::size_t> Schema::find(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].name == name) return i;
  return std::nullopt;
}

std::vector<ColumnSpec> Schema::feature_columns() const {
  std::vector<ColumnSpec> out;
  out.reserve(columns_.size() - 1);
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (i != outcome_index_) out.push_back(columns_[i]);
  return out;
}

nlohmann::json to_json(const ColumnSpec& column) {
  nlohmann::json j;
  j["name"] = column.name;
  j["kind"] = to_string(column.kind);
  j["role"] = to_string(column.role);
  if (column.valid_range) {
    j["min"] = column.valid_range->min;
    j["max"] = column.valid_range->max;
  }
  return j;
}

ColumnSpec column_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("kind") || !j.contains("role"))
    fail(ErrorCode::InvalidArgument, "schema column needs name, kind and role");
  ColumnSpec c;
  c.name = j.at("name").get<std::string>();
  c.kind = parse_column_kind(j.at("kind").get<std::string>());
  c.role = parse_column_role(j.at("role").get<std::string>());
  const bool has_min = j.contains("min") && !j.at("min").is_null();
  const bool has_max = j.contains("max") && !j.at("max").is_null();
  if (has_min != has_max) fail(ErrorCode::InvalidArgument, "column " + c.name + " needs both min and max");
  if (has_min) c.valid_range = ValueRange{j.at("min").get<double>(), j.at("max").get<double>()};
  return c;
}

nlohmann::json to_json(const Schema& schema) {
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : schema.columns()) cols.push_back(to_json(c));
  return {{"columns", cols}};
}

Schema schema_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("columns") || !j.at("columns").is_array())
      fail(ErrorCode::InvalidArgument, "schema must be an object with a \"columns\" array");
    std::vector<ColumnSpec> cols;
    for (const auto& c : j.at("columns")) cols.push_back(column_from_json(c));
    return Schema(std::move(cols));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("malformed schema: ") + e.what());
  }
}

Schema load_schema_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open schema file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidArgument, "schema file is not valid JSON: " + std::string(e.what()));
  }
  return schema_from_json(j);
}

std::string_view to_string(GroupId id) {
  switch (id) {
    case GroupId::I: return "I";
    case GroupId::II: return "II";
    case GroupId::III: return "III";
    case GroupId::IV: return "IV";
    case GroupId::V: return "V";
    case GroupId::VI: return "VI";
    case GroupId::VII: return "VII";
  }
  return "?";
}

GroupId parse_group_id(std::string_view text) {
  for (GroupId id : kAllGroups)
    if (to_string(id) == text) return id;
  fail(ErrorCode::UnknownGroup, "unknown group: " + std::string(text));
}

VariableGroup make_group(GroupId id, std::string name, std::vector<std::string> columns) {
  for (const auto& c : columns) {
    if (c.rfind("M6_", 0) == 0 || c.rfind("SAT_", 0) == 0)
      fail(ErrorCode::InvalidArgument, "group " + std::string(to_string(id)) +
                                           " may not contain post-operative column " + c);
  }
  return VariableGroup{id, std::move(name), std::move(columns)};
}

namespace {

std::vector<std::string> join(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::array<VariableGroup, 7> build_groups() {
  const std::vector<std::string> pre = {"BMI", "LEVELS", "PRE_LUMBAR_EVA", "PRE_LEG_EVA", "PRE_ODI"};
  const std::vector<std::string> socio = {"GEN", "AGE", "EMP_ST"};
  const std::vector<std::string> psych = {"MSPQ", "ZUNG", "DRAM"};
  const std::vector<std::string> lab = {"GLU", "UREA", "URIC_ACID", "CREAT", "CHOL"};
  return {
      make_group(GroupId::I, "Pre-surgical", pre),
      make_group(GroupId::II, "Socioeconomic", socio),
      make_group(GroupId::III, "Psychometric", psych),
      make_group(GroupId::IV, "Analytical", lab),
      make_group(GroupId::V, "Pre-surgical + Analytical", join({pre, lab})),
      make_group(GroupId::VI, "Socioeconomic + Psychometric", join({socio, psych})),
      make_group(GroupId::VII, "All except post-operative", join({pre, socio, psych, lab})),
  };
}

}  // namespace

const VariableGroup& builtin_group(GroupId id) {
  static const std::array<VariableGroup, 7> groups = build_groups();
  return groups[static_cast<std::size_t>(id) - 1];
}

}  // namespace spineout
