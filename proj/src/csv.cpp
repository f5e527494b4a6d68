#include "spineout/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "spineout/error.hpp"

namespace spineout {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Splits one record. Supports double-quoted fields (with "" escapes) that do
// not span lines.
bool split_record(std::string_view line, std::vector<std::string>& fields) {
  fields.clear();
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return !quoted;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

LoadResult parse_csv(std::string_view text, const Schema& schema) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (lines.empty()) fail(ErrorCode::MalformedCsv, "malformed CSV at line 1: missing header");

  std::vector<std::string> fields;
  if (!split_record(trim(lines[0]), fields)) fail(ErrorCode::MalformedCsv, "malformed CSV at line 1");
  const std::size_t width = fields.size();

  // Position of each schema column in the file.
  std::vector<std::size_t> position(schema.columns().size());
  for (std::size_t c = 0; c < schema.columns().size(); ++c) {
    const auto& name = schema.columns()[c].name;
    bool found = false;
    for (std::size_t f = 0; f < fields.size(); ++f) {
      if (trim(fields[f]) == name) {
        position[c] = f;
        found = true;
        break;
      }
    }
    if (!found) fail(ErrorCode::MissingColumn, "missing column: " + name);
  }

  const std::size_t outcome = schema.outcome_index();
  const std::size_t d = schema.columns().size() - 1;
  Matrix x(0, d);
  std::vector<int> y;
  IngestionReport report;
  std::vector<double> row(d);

  std::size_t data_row = 0;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::string_view line = trim(lines[li]);
    if (line.empty()) continue;
    ++data_row;
    ++report.rows_read;
    if (!split_record(line, fields) || fields.size() != width)
      fail(ErrorCode::MalformedCsv, "malformed CSV at line " + std::to_string(li + 1));

    bool ok = true;
    int label = 0;
    std::size_t j = 0;
    for (std::size_t c = 0; c < schema.columns().size() && ok; ++c) {
      double v = 0.0;
      const auto& name = schema.columns()[c].name;
      if (!parse_double(fields[position[c]], v)) {
        const bool empty = trim(fields[position[c]]).empty();
        report.dropped.push_back({data_row, li + 1, name, empty ? "missing value" : "unparseable value"});
        ok = false;
      } else if (c == outcome) {
        if (v != 0.0 && v != 1.0) {
          report.dropped.push_back({data_row, li + 1, name, "outcome is not 0/1"});
          ok = false;
        }
        label = static_cast<int>(v);
      } else {
        row[j++] = v;
      }
    }
    if (!ok) continue;
    x.append_row(row);
    y.push_back(label);
  }
  if (x.rows() == 0) fail(ErrorCode::EmptyAfterFiltering, "no complete rows remain after filtering");
  return LoadResult{make_dataset(schema, std::move(x), std::move(y)), std::move(report)};
}

LoadResult load_csv(const std::string& path, const Schema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open CSV file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), schema);
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  if (std::nearbyint(value) == value && std::fabs(value) < 1e15) {
    return std::to_string(static_cast<std::int64_t>(value));
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
  std::string out(buf, ptr);
  // Shortest form: strip trailing zeros of the mantissa.
  const auto exp_pos = out.find_first_of("eE");
  std::string mantissa = out.substr(0, exp_pos);
  const std::string exponent = exp_pos == std::string::npos ? "" : out.substr(exp_pos);
  if (mantissa.find('.') != std::string::npos) {
    while (!mantissa.empty() && mantissa.back() == '0') mantissa.pop_back();
    if (!mantissa.empty() && mantissa.back() == '.') mantissa.pop_back();
  }
  return mantissa + exponent;
}

std::string to_csv(const Dataset& data) {
  std::string out;
  const auto& cols = data.schema.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c) out += ',';
    out += cols[c].name;
  }
  out += '\n';
  const std::size_t outcome = data.schema.outcome_index();
  for (std::size_t r = 0; r < data.n(); ++r) {
    std::size_t j = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) out += ',';
      out += c == outcome ? std::to_string(data.y[r]) : format_number(data.x(r, j++));
    }
    out += '\n';
  }
  return out;
}

void write_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write CSV file: " + path);
  out << to_csv(data);
  if (!out) fail(ErrorCode::IoError, "failed writing CSV file: " + path);
}

}  // namespace spineout
