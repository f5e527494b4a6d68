#include "spineout/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spineout/error.hpp"

namespace spineout {

int derive_success(int sat_surgical_6m, int sat_pain_6m) {
  for (int v : {sat_surgical_6m, sat_pain_6m})
    if (v < 0 || v > 4) fail(ErrorCode::OutOfRange, "satisfaction answer out of range 0..4: " + std::to_string(v));
  return (sat_surgical_6m <= 1 && sat_pain_6m <= 1) ? 1 : 0;
}

double ScalerState::minmax(std::size_t k, double v) const {
  if (constant[k] || max[k] <= min[k]) return 0.0;
  return std::clamp((v - min[k]) / (max[k] - min[k]), 0.0, 1.0);
}

ScalerState fit_standardizer(const Dataset& train, std::span<const std::size_t> columns) {
  const std::size_t n = train.n();
  if (n < 2) fail(ErrorCode::TooFewRows, "standardizer needs at least 2 training rows");
  ScalerState s;
  s.width = train.d();
  s.columns.assign(columns.begin(), columns.end());
  for (std::size_t j : s.columns) {
    if (j >= train.d()) fail(ErrorCode::ColumnMismatch, "scaler column index out of range");
    double sum = 0.0;
    double lo = train.x(0, j);
    double hi = lo;
    for (std::size_t r = 0; r < n; ++r) {
      const double v = train.x(r, j);
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double dv = train.x(r, j) - mean;
      ss += dv * dv;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const bool constant = lo == hi;
    s.mean.push_back(mean);
    s.stddev.push_back(constant || sd == 0.0 ? 1.0 : sd);
    s.min.push_back(lo);
    s.max.push_back(hi);
    s.constant.push_back(constant);
  }
  return s;
}

namespace {

void check_width(const Dataset& data, const ScalerState& state) {
  if (data.d() != state.width)
    fail(ErrorCode::ColumnMismatch, "scaler fitted on " + std::to_string(state.width) + " columns, data has " +
                                        std::to_string(data.d()));
}

}  // namespace

Dataset apply_standardizer(const Dataset& data, const ScalerState& state) {
  check_width(data, state);
  Dataset out = data;
  for (std::size_t k = 0; k < state.columns.size(); ++k) {
    const std::size_t j = state.columns[k];
    for (std::size_t r = 0; r < out.n(); ++r) out.x(r, j) = state.standardize(k, data.x(r, j));
  }
  return out;
}

Dataset apply_minmax(const Dataset& data, const ScalerState& state) {
  check_width(data, state);
  Dataset out = data;
  for (std::size_t k = 0; k < state.columns.size(); ++k) {
    const std::size_t j = state.columns[k];
    for (std::size_t r = 0; r < out.n(); ++r) out.x(r, j) = state.minmax(k, data.x(r, j));
  }
  return out;
}

std::vector<std::size_t> continuous_columns(const Dataset& data) {
  std::vector<std::size_t> out;
  const auto features = data.features();
  for (std::size_t j = 0; j < features.size(); ++j)
    if (!features[j].categorical()) out.push_back(j);
  return out;
}

std::vector<std::size_t> all_columns(const Dataset& data) {
  std::vector<std::size_t> out(data.d());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = j;
  return out;
}

double OrdinalEncoder::encode(std::size_t k, double v) const {
  const auto& c = codes[k];
  auto it = std::upper_bound(c.begin(), c.end(), v);
  if (it == c.begin()) return 0.0;
  return static_cast<double>(std::distance(c.begin(), it) - 1);
}

OrdinalEncoder fit_ordinal_encoder(const Dataset& train) {
  OrdinalEncoder enc;
  enc.width = train.d();
  const auto features = train.features();
  for (std::size_t j = 0; j < features.size(); ++j) {
    if (!features[j].categorical()) continue;
    std::vector<double> values;
    for (std::size_t r = 0; r < train.n(); ++r) {
      const double v = train.x(r, j);
      if (std::nearbyint(v) != v) fail(ErrorCode::NonIntegerCategorical, "non-integer categorical value in " + features[j].name);
      values.push_back(v);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    enc.columns.push_back(j);
    enc.codes.push_back(std::move(values));
  }
  return enc;
}

Dataset apply_ordinal_encoder(const Dataset& data, const OrdinalEncoder& encoder) {
  if (data.d() != encoder.width) fail(ErrorCode::ColumnMismatch, "encoder width differs from data width");
  const auto features = data.features();
  Dataset out = data;
  for (std::size_t k = 0; k < encoder.columns.size(); ++k) {
    const std::size_t j = encoder.columns[k];
    for (std::size_t r = 0; r < out.n(); ++r) {
      const double v = data.x(r, j);
      if (std::nearbyint(v) != v) fail(ErrorCode::NonIntegerCategorical, "non-integer categorical value in " + features[j].name);
      out.x(r, j) = encoder.encode(k, v);
    }
  }
  return out;
}

Dataset encode_ordinals(const Dataset& data) { return apply_ordinal_encoder(data, fit_ordinal_encoder(data)); }

}  // namespace spineout
