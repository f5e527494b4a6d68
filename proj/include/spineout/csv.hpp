#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "spineout/dataset.hpp"

namespace spineout {

struct DroppedRow {
  std::size_t row = 0;   // 1-based data row (header excluded)
  std::size_t line = 0;  // 1-based physical line in the file
  std::string column;
  std::string reason;
};

struct IngestionReport {
  std::size_t rows_read = 0;
  std::vector<DroppedRow> dropped;
};

struct LoadResult {
  Dataset data;
  IngestionReport report;
};

// Reads a comma-separated table whose header names a superset of the schema
// columns. Rows with a missing or unparseable schema value (or an outcome other
// than 0/1) are dropped and listed in the report.
LoadResult load_csv(const std::string& path, const Schema& schema);
LoadResult parse_csv(std::string_view text, const Schema& schema);

// Canonical decimal form: integral values without a fraction, everything else
// with up to 9 significant digits (shortest form, round-half-even).
std::string format_number(double value);

std::string to_csv(const Dataset& data);
void write_csv(const Dataset& data, const std::string& path);

}  // namespace spineout
