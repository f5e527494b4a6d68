#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spineout/error.hpp"

namespace spineout {

struct Prediction {
  int label = 0;
  // Posterior, vote fraction or leaf fraction of the winning label.
  double score = 0.0;
  // Per-class values aligned with the model's class list.
  std::vector<double> per_class;
};

// Sorted distinct labels; throws SingleClass when fewer than two.
std::vector<int> distinct_classes(std::span<const int> labels);

inline void check_width(std::size_t expected, std::size_t actual) {
  if (expected != actual)
    fail(ErrorCode::WidthMismatch,
         "expected " + std::to_string(expected) + " features, got " + std::to_string(actual));
}

}  // namespace spineout
