#include "spineout/dataset.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "spineout/error.hpp"

namespace spineout {

Dataset make_dataset(Schema schema, Matrix x, std::vector<int> y) {
  const std::size_t width = schema.columns().size() - 1;
  if (x.cols() != width)
    fail(ErrorCode::ColumnMismatch, "matrix has " + std::to_string(x.cols()) + " columns, schema expects " +
                                        std::to_string(width));
  if (y.size() != x.rows()) fail(ErrorCode::LengthMismatch, "label count differs from row count");
  for (double v : x.data())
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "dataset contains a non-finite value");
  Dataset out{std::move(schema), std::move(x), std::move(y), {}};
  out.origin.resize(out.n());
  std::iota(out.origin.begin(), out.origin.end(), std::size_t{0});
  return out;
}

Dataset from_matrix(Matrix x, std::vector<int> y) {
  std::vector<ColumnSpec> cols;
  for (std::size_t j = 0; j < x.cols(); ++j)
    cols.push_back(ColumnSpec{"f" + std::to_string(j), ColumnKind::Continuous, std::nullopt, ColumnRole::Presurgical});
  cols.push_back(ColumnSpec{"label", ColumnKind::Binary, ValueRange{0, 1}, ColumnRole::Outcome});
  return make_dataset(Schema(std::move(cols)), std::move(x), std::move(y));
}

Dataset select_rows(const Dataset& data, std::span<const std::size_t> rows) {
  Dataset out{data.schema, data.x.select_rows(rows), {}, {}};
  out.y.reserve(rows.size());
  out.origin.reserve(rows.size());
  for (std::size_t r : rows) {
    out.y.push_back(data.y[r]);
    out.origin.push_back(data.origin[r]);
  }
  return out;
}

Dataset select_columns(const Dataset& data, std::span<const std::size_t> feature_indices) {
  const auto features = data.features();
  std::vector<ColumnSpec> cols;
  for (std::size_t j : feature_indices) {
    if (j >= features.size()) fail(ErrorCode::ColumnMismatch, "feature index out of range");
    cols.push_back(features[j]);
  }
  cols.push_back(data.schema.outcome());
  return Dataset{Schema(std::move(cols)), data.x.select_cols(feature_indices), data.y, data.origin};
}

Dataset select_group(const Dataset& data, const VariableGroup& group) {
  const auto features = data.features();
  for (const auto& name : group.column_names) {
    bool found = false;
    for (const auto& f : features) found = found || f.name == name;
    if (!found) fail(ErrorCode::MissingColumn, "missing column: " + name);
  }
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < features.size(); ++j) {
    for (const auto& name : group.column_names) {
      if (features[j].name == name) {
        keep.push_back(j);
        break;
      }
    }
  }
  return select_columns(data, keep);
}

std::map<int, std::size_t> label_counts(std::span<const int> labels) {
  std::map<int, std::size_t> counts;
  for (int v : labels) ++counts[v];
  return counts;
}

}  // namespace spineout
