#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "spineout/dataset.hpp"
#include "spineout/error.hpp"
#include "spineout/resampling.hpp"
#include "spineout/rng.hpp"

using namespace spineout;

namespace {

Dataset imbalanced(std::size_t majority, std::size_t minority, std::uint64_t seed, std::size_t d = 2) {
  Rng rng(seed);
  Matrix x(majority + minority, d);
  std::vector<int> y;
  for (std::size_t r = 0; r < majority + minority; ++r) {
    for (std::size_t j = 0; j < d; ++j) x(r, j) = rng.uniform(0, 10);
    y.push_back(r < majority ? 0 : 1);
  }
  return from_matrix(std::move(x), std::move(y));
}

std::size_t count_label(const Dataset& d, int label) {
  std::size_t c = 0;
  for (int y : d.y) c += y == label ? 1 : 0;
  return c;
}

void check_originals_untouched(const Dataset& before, const Dataset& after) {
  REQUIRE(after.n() >= before.n());
  for (std::size_t r = 0; r < before.n(); ++r) {
    CHECK(after.y[r] == before.y[r]);
    for (std::size_t j = 0; j < before.d(); ++j) CHECK(after.x(r, j) == before.x(r, j));
  }
}

}  // namespace

TEST_SUITE("resampling") {
  TEST_CASE("random oversampling to parity") {
    const Dataset d = imbalanced(10, 4, 1);
    const Dataset out = random_oversample(d, {ResampleMethod::RandomOver, 1.0, 5, 3});
    CHECK(out.n() == 20);
    CHECK(count_label(out, 1) == 10);
    CHECK(count_label(out, 0) == 10);
    check_originals_untouched(d, out);
    // Every appended row duplicates an original minority row.
    std::set<std::vector<double>> minority;
    for (std::size_t r = 10; r < 14; ++r) minority.insert({d.x.row(r).begin(), d.x.row(r).end()});
    for (std::size_t r = 14; r < out.n(); ++r) {
      CHECK(out.y[r] == 1);
      CHECK(minority.count({out.x.row(r).begin(), out.x.row(r).end()}) == 1);
      CHECK(out.origin[r] >= 10);
    }
  }

  TEST_CASE("balanced data is left unchanged") {
    const Dataset d = imbalanced(5, 5, 2);
    const Dataset out = random_oversample(d, {ResampleMethod::RandomOver, 1.0, 5, 3});
    CHECK(out.x == d.x);
    CHECK(out.y == d.y);
    CHECK(smote_oversample(d, {ResampleMethod::Smote, 1.0, 5, 3}).x == d.x);
  }

  TEST_CASE("single minority row is duplicated to parity") {
    const Dataset d = imbalanced(6, 1, 3);
    const Dataset out = random_oversample(d, {ResampleMethod::RandomOver, 1.0, 5, 9});
    CHECK(count_label(out, 1) == 6);
    for (std::size_t r = 7; r < out.n(); ++r)
      for (std::size_t j = 0; j < d.d(); ++j) CHECK(out.x(r, j) == d.x(6, j));
    CHECK_THROWS_AS(smote_oversample(d, {ResampleMethod::Smote, 1.0, 5, 9}), Error);
  }

  TEST_CASE("target ratio gives ceil(ratio * majority) minority rows") {
    for (double ratio : {0.3, 0.5, 0.75, 0.9, 1.0}) {
      for (auto method : {ResampleMethod::RandomOver, ResampleMethod::Smote}) {
        const Dataset d = imbalanced(10, 2, 4);
        const Dataset out = oversample(d, {method, ratio, 3, 1});
        const auto expected = static_cast<std::size_t>(std::max(2.0, std::ceil(ratio * 10 - 1e-9)));
        CHECK(count_label(out, 1) == expected);
        CHECK(count_label(out, 0) == 10);
      }
    }
  }

  TEST_CASE("smote on two points lies on their diagonal") {
    Matrix x(5, 2, {5, 0, 6, 1, 7, 0, 0, 0, 1, 1});
    const Dataset d = from_matrix(x, {0, 0, 0, 1, 1});
    const Dataset out = smote_oversample(d, {ResampleMethod::Smote, 1.0, 5, 4});
    REQUIRE(out.n() == 6);
    CHECK(out.x(5, 0) == out.x(5, 1));
    CHECK(out.x(5, 0) >= 0.0);
    CHECK(out.x(5, 0) < 1.0);
  }

  TEST_CASE("smote synthetics lie on seed-neighbor segments") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Dataset d = imbalanced(12, 4, 100 + seed, 3);
      const Dataset out = smote_oversample(d, {ResampleMethod::Smote, 1.0, 3, seed});
      REQUIRE(out.n() == 24);
      check_originals_untouched(d, out);
      oracle::Rows minority;
      for (std::size_t r = 12; r < 16; ++r) minority.emplace_back(d.x.row(r).begin(), d.x.row(r).end());
      for (std::size_t r = 16; r < 24; ++r) {
        const std::vector<double> p(out.x.row(r).begin(), out.x.row(r).end());
        double best = 1e300;
        for (std::size_t a = 0; a < minority.size(); ++a)
          for (std::size_t z : oracle::nearest_others(minority, a, 3))
            best = std::min(best, oracle::point_segment_distance(p, minority[a], minority[z]));
        CHECK(best < 1e-9);
      }
    }
  }

  TEST_CASE("resampling is deterministic in the plan seed") {
    const Dataset d = imbalanced(30, 7, 5);
    for (auto method : {ResampleMethod::RandomOver, ResampleMethod::Smote}) {
      const ResamplePlan plan{method, 1.0, 5, 77};
      CHECK(oversample(d, plan).x == oversample(d, plan).x);
      CHECK(oversample(d, plan).origin == oversample(d, plan).origin);
    }
  }
}
