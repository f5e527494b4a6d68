#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "spineout/dataset.hpp"

namespace spineout {

enum class ResampleMethod { RandomOver, Smote };

std::string_view to_string(ResampleMethod m);
ResampleMethod parse_resample_method(std::string_view text);

struct ResamplePlan {
  ResampleMethod method = ResampleMethod::RandomOver;
  double target_ratio = 1.0;  // minority target = ceil(ratio * majority)
  int smote_k = 5;
  std::uint64_t seed = 0;
};

// Appends uniform-with-replacement copies of minority rows after the
// original rows.
Dataset random_oversample(const Dataset& train, const ResamplePlan& plan);

// Appends SMOTE interpolants. Seed points are taken round-robin over the
// minority rows starting at a seeded offset; each is paired with one of its
// min(k, m-1) nearest minority neighbours (euclidean, ties to lower row).
Dataset smote_oversample(const Dataset& train, const ResamplePlan& plan);

Dataset oversample(const Dataset& train, const ResamplePlan& plan);

}  // namespace spineout
