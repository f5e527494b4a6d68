#include "spineout/synthetic.hpp"

#include <cmath>
#include <string>

#include "spineout/error.hpp"
#include "spineout/rng.hpp"

namespace spineout {

namespace {

double round_to(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::nearbyint(v * scale) / scale;
}

// Normal with mean at the range centre (plus `shift` standard deviations) and
// sd = range/6, truncated to [lo, hi] by rejection.
double truncated_normal(Rng& rng, double lo, double hi, double shift) {
  const double sd = (hi - lo) / 6.0;
  const double mean = 0.5 * (lo + hi) + shift * sd;
  for (;;) {
    const double v = mean + sd * rng.normal();
    if (v >= lo && v <= hi) return v;
  }
}

double uniform_int(Rng& rng, int lo, int hi) {
  return static_cast<double>(lo + static_cast<int>(rng.index(static_cast<std::size_t>(hi - lo + 1))));
}

// Distress and risk category from the Zung and MSPQ scores.
double dram_category(double zung, double mspq) {
  if (zung < 36) return 0;
  if (zung >= 52) return 2;
  return mspq < 12 ? 1 : 3;
}

}  // namespace

Dataset generate_synthetic(std::size_t n, std::uint64_t seed, double signal, const SyntheticOptions& options) {
  if (n < 20) fail(ErrorCode::NTooSmall, "n must be >= 20");
  if (!(signal >= 0.0 && signal <= 1.0)) fail(ErrorCode::InvalidArgument, "signal must lie in [0, 1]");
  if (!(options.success_rate > 0.0 && options.success_rate < 1.0))
    fail(ErrorCode::InvalidArgument, "success rate must lie in (0, 1)");

  const Schema schema = Schema::spine_default();
  const auto features = schema.feature_columns();
  Rng rng(seed);
  Matrix x(n, features.size());
  std::vector<int> y(n);

  auto col = [&](const char* name) {
    for (std::size_t j = 0; j < features.size(); ++j)
      if (features[j].name == name) return j;
    return features.size();
  };
  const std::size_t gen = col("GEN"), age = col("AGE"), bmi = col("BMI"), levels = col("LEVELS"),
                    emp = col("EMP_ST"), mspq = col("MSPQ"), zung = col("ZUNG"), dram = col("DRAM"),
                    pre_lumbar = col("PRE_LUMBAR_EVA"), pre_leg = col("PRE_LEG_EVA"),
                    m6_lumbar = col("M6_LUMBAR_EVA"), m6_leg = col("M6_LEG_EVA"), pre_odi = col("PRE_ODI"),
                    m6_odi = col("M6_POST_ODI"), sat_proc = col("SAT_SURGICAL_PROC"),
                    sat_pain_pre = col("SAT_PAIN_PRE"), sat_6m = col("SAT_SURGICAL_6M"),
                    sat_pain_6m = col("SAT_PAIN_6M"), glu = col("GLU"), urea = col("UREA"),
                    uric = col("URIC_ACID"), creat = col("CREAT"), chol = col("CHOL");

  for (std::size_t r = 0; r < n; ++r) {
    const int label = rng.bernoulli(options.success_rate) ? 1 : 0;
    const bool informative = rng.bernoulli(signal);
    const double shift = informative ? (label == 1 ? -options.effect_size : options.effect_size) : 0.0;
    y[r] = label;

    x(r, gen) = rng.bernoulli(options.male_rate) ? 1 : 0;
    x(r, age) = std::nearbyint(truncated_normal(rng, 18, 90, 0.0));
    x(r, bmi) = round_to(truncated_normal(rng, 15, 50, 0.0), 1);
    x(r, levels) = uniform_int(rng, 1, 5);
    x(r, emp) = uniform_int(rng, 1, 13);
    x(r, mspq) = std::nearbyint(truncated_normal(rng, 0, 39, shift));
    x(r, zung) = std::nearbyint(truncated_normal(rng, 20, 80, shift));
    x(r, dram) = dram_category(x(r, zung), x(r, mspq));
    x(r, pre_lumbar) = std::nearbyint(truncated_normal(rng, 0, 10, shift));
    x(r, pre_leg) = std::nearbyint(truncated_normal(rng, 0, 10, shift));
    x(r, pre_odi) = std::nearbyint(truncated_normal(rng, 0, 100, shift));

    // Post-operative measurements follow the outcome; they never enter a group.
    const double post_shift = label == 1 ? -1.0 : 1.0;
    x(r, m6_lumbar) = std::nearbyint(truncated_normal(rng, 0, 10, post_shift));
    x(r, m6_leg) = std::nearbyint(truncated_normal(rng, 0, 10, post_shift));
    x(r, m6_odi) = std::nearbyint(truncated_normal(rng, 0, 100, post_shift));

    x(r, sat_proc) = uniform_int(rng, 0, 4);
    x(r, sat_pain_pre) = uniform_int(rng, 0, 4);
    if (label == 1) {
      x(r, sat_6m) = uniform_int(rng, 0, 1);
      x(r, sat_pain_6m) = uniform_int(rng, 0, 1);
    } else {
      // Uniform over the 21 answer pairs where at least one answer exceeds 1.
      double a, b;
      do {
        a = uniform_int(rng, 0, 4);
        b = uniform_int(rng, 0, 4);
      } while (a <= 1 && b <= 1);
      x(r, sat_6m) = a;
      x(r, sat_pain_6m) = b;
    }

    x(r, glu) = round_to(rng.uniform(70, 110), 2);
    x(r, urea) = round_to(rng.uniform(16, 49), 2);
    x(r, uric) = round_to(rng.uniform(2.4, 5.7), 2);
    x(r, creat) = round_to(rng.uniform(0.5, 0.9), 2);
    x(r, chol) = round_to(rng.uniform(200, 250), 2);
  }
  return make_dataset(schema, std::move(x), std::move(y));
}

}  // namespace spineout
