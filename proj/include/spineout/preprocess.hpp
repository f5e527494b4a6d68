#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spineout/dataset.hpp"

namespace spineout {

// Success iff both 6-month satisfaction answers (coded 0..4) are <= 1.
int derive_success(int sat_surgical_6m, int sat_pain_6m);

// Per-column statistics fitted on training rows only.
struct ScalerState {
  std::size_t width = 0;             // feature count of the data it was fitted on
  std::vector<std::size_t> columns;  // feature indices it transforms
  std::vector<double> mean;
  std::vector<double> stddev;  // sample (n-1); 1 for constant columns
  std::vector<double> min;
  std::vector<double> max;
  std::vector<bool> constant;

  double standardize(std::size_t k, double v) const { return (v - mean[k]) / stddev[k]; }
  double minmax(std::size_t k, double v) const;
};

ScalerState fit_standardizer(const Dataset& train, std::span<const std::size_t> columns);
Dataset apply_standardizer(const Dataset& data, const ScalerState& state);
Dataset apply_minmax(const Dataset& data, const ScalerState& state);

std::vector<std::size_t> continuous_columns(const Dataset& data);
std::vector<std::size_t> all_columns(const Dataset& data);

// Order-preserving rank codes for categorical (ordinal/binary) columns.
struct OrdinalEncoder {
  std::size_t width = 0;
  std::vector<std::size_t> columns;
  std::vector<std::vector<double>> codes;  // sorted distinct training values per column

  // Rank of v among the training codes. A value never seen in training maps
  // to the rank of the largest training code below it (0 if below all).
  double encode(std::size_t k, double v) const;
};

OrdinalEncoder fit_ordinal_encoder(const Dataset& train);
Dataset apply_ordinal_encoder(const Dataset& data, const OrdinalEncoder& encoder);
// Fit and apply on the same data.
Dataset encode_ordinals(const Dataset& data);

}  // namespace spineout
