#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace spineout {

enum class ColumnKind { Continuous, Ordinal, Binary };
enum class ColumnRole {
  Socioeconomic,
  Psychometric,
  Analytical,
  Presurgical,
  Postoperative,
  Satisfaction,
  Outcome,
};

std::string_view to_string(ColumnKind kind);
std::string_view to_string(ColumnRole role);
ColumnKind parse_column_kind(std::string_view text);
ColumnRole parse_column_role(std::string_view text);

struct ValueRange {
  double min = 0.0;
  double max = 0.0;
  bool contains(double v) const { return v >= min && v <= max; }
  friend bool operator==(const ValueRange&, const ValueRange&) = default;
};

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::Continuous;
  std::optional<ValueRange> valid_range;
  ColumnRole role = ColumnRole::Presurgical;

  bool categorical() const { return kind != ColumnKind::Continuous; }
  friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

// Ordered column list with exactly one outcome column and unique names.
class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<ColumnSpec> columns);

  // The spine-surgery table: 23 predictors/post-op measurements plus SUCCESS.
  static Schema spine_default();

  const std::vector<ColumnSpec>& columns() const noexcept { return columns_; }
  std::optional<std::size_t> find(std::string_view name) const;
  const ColumnSpec& outcome() const { return columns_[outcome_index_]; }
  std::size_t outcome_index() const noexcept { return outcome_index_; }

  // Non-outcome columns in schema order; these are the Dataset feature columns.
  std::vector<ColumnSpec> feature_columns() const;

  friend bool operator==(const Schema&, const Schema&) = default;

 private:
  std::vector<ColumnSpec> columns_;
  std::size_t outcome_index_ = 0;
};

nlohmann::json to_json(const ColumnSpec& column);
ColumnSpec column_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Schema& schema);
Schema schema_from_json(const nlohmann::json& j);
Schema load_schema_file(const std::string& path);

enum class GroupId { I = 1, II, III, IV, V, VI, VII };

inline constexpr std::array<GroupId, 7> kAllGroups = {
    GroupId::I, GroupId::II, GroupId::III, GroupId::IV, GroupId::V, GroupId::VI, GroupId::VII};

std::string_view to_string(GroupId id);
// Accepts roman numerals "I".."VII"; throws UnknownGroup otherwise.
GroupId parse_group_id(std::string_view text);

struct VariableGroup {
  GroupId id;
  std::string name;
  std::vector<std::string> column_names;
};

// Builds a group, rejecting any postoperative (M6_*) or satisfaction (SAT_*)
// column.
VariableGroup make_group(GroupId id, std::string name, std::vector<std::string> columns);

const VariableGroup& builtin_group(GroupId id);

}  // namespace spineout
