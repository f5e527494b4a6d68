#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "spineout/matrix.hpp"
#include "spineout/schema.hpp"

namespace spineout {

// Feature matrix + binary labels + the schema that names the columns.
// Feature column j corresponds to schema.feature_columns()[j].
struct Dataset {
  Schema schema;
  Matrix x;
  std::vector<int> y;
  // Row ids in the originally loaded/generated table. Appended resampled rows
  // carry the id of the row they were derived from. Used by the leakage audit.
  std::vector<std::size_t> origin;

  std::size_t n() const noexcept { return x.rows(); }
  std::size_t d() const noexcept { return x.cols(); }
  std::vector<ColumnSpec> features() const { return schema.feature_columns(); }
};

// Validates the invariants (widths, finiteness, labels) and assigns origin ids
// 0..n-1.
Dataset make_dataset(Schema schema, Matrix x, std::vector<int> y);

// Wraps a bare matrix with a generic continuous schema (f0, f1, ..., label).
Dataset from_matrix(Matrix x, std::vector<int> y);

Dataset select_rows(const Dataset& data, std::span<const std::size_t> rows);
Dataset select_columns(const Dataset& data, std::span<const std::size_t> feature_indices);
Dataset select_group(const Dataset& data, const VariableGroup& group);

std::map<int, std::size_t> label_counts(std::span<const int> labels);

}  // namespace spineout
