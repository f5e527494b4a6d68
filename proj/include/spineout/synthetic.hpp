#pragma once

#include <cstddef>
#include <cstdint>

#include "spineout/dataset.hpp"

namespace spineout {

struct SyntheticOptions {
  double success_rate = 0.522;
  double male_rate = 0.525;
  // Mean shift, in generator standard deviations, applied to informative rows.
  double effect_size = 1.0;
};

// Draws a dataset on the default spine schema. Each row is "informative" with
// probability `signal`; informative rows have their pre-surgical pain/ODI and
// psychometric scores shifted by the label (lower for success). With signal 0
// every feature is independent of the label. Deterministic in `seed`.
Dataset generate_synthetic(std::size_t n, std::uint64_t seed, double signal, const SyntheticOptions& options = {});

}  // namespace spineout
