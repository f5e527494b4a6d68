#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "spineout/classifier.hpp"
#include "spineout/error.hpp"
#include "spineout/metrics.hpp"
#include "spineout/model_selection.hpp"
#include "spineout/rng.hpp"

using namespace spineout;

namespace {

std::vector<int> labels_with(std::size_t ones, std::size_t zeros, std::uint64_t seed) {
  std::vector<int> y(ones, 1);
  y.insert(y.end(), zeros, 0);
  Rng rng(seed);
  rng.shuffle(y);
  return y;
}

// Two overlapping gaussian blobs with some flipped labels.
Dataset noisy_blobs(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix x(n, 2);
  std::vector<int> y(n);
  for (std::size_t r = 0; r < n; ++r) {
    const int label = static_cast<int>(r % 2);
    for (std::size_t j = 0; j < 2; ++j) x(r, j) = rng.normal() + (label ? 1.5 : 0.0);
    y[r] = rng.bernoulli(0.15) ? 1 - label : label;
  }
  return from_matrix(std::move(x), std::move(y));
}

}  // namespace

TEST_SUITE("model_selection") {
  TEST_CASE("split sizes for 244 rows") {
    const auto y = labels_with(127, 117, 1);
    const auto s = stratified_shuffle_split(y, 0.25, 42);
    CHECK(s.test.size() == 61);
    CHECK(s.train.size() == 183);
    std::vector<std::size_t> all = s.train;
    all.insert(all.end(), s.test.begin(), s.test.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);
  }

  TEST_CASE("balanced split gives 12 or 13 of each class") {
    const auto y = labels_with(50, 50, 2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto s = stratified_shuffle_split(y, 0.25, seed);
      CHECK(s.test.size() == 25);
      std::size_t ones = 0;
      for (std::size_t r : s.test) ones += static_cast<std::size_t>(y[r]);
      CHECK((ones == 12 || ones == 13));
    }
  }

  TEST_CASE("split is deterministic and stratified for every seed") {
    const auto y = labels_with(70, 31, 3);
    CHECK(stratified_shuffle_split(y, 0.25, 9).test == stratified_shuffle_split(y, 0.25, 9).test);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto s = stratified_shuffle_split(y, 0.3, seed);
      std::size_t ones = 0;
      for (std::size_t r : s.test) ones += static_cast<std::size_t>(y[r]);
      CHECK(std::fabs(static_cast<double>(ones) - 0.3 * 70) <= 1.0);
      CHECK(std::fabs(static_cast<double>(s.test.size() - ones) - 0.3 * 31) <= 1.0);
    }
    const std::vector<int> tiny{0, 1, 1, 1};
    CHECK_THROWS_AS(stratified_shuffle_split(tiny, 0.25, 1), Error);
  }

  TEST_CASE("eight folds over 183 rows") {
    const auto y = labels_with(95, 88, 4);
    const auto plan = stratified_kfold(y, 8, 42);
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> all;
    for (const auto& f : plan.folds) {
      sizes.push_back(f.size());
      all.insert(all.end(), f.begin(), f.end());
    }
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{22, 23, 23, 23, 23, 23, 23, 23});
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);
    const auto tr = plan.training_positions(0);
    CHECK(tr.size() + plan.folds[0].size() == 183);
  }

  TEST_CASE("sixteen balanced rows give one of each class per fold") {
    const auto y = labels_with(8, 8, 5);
    const auto plan = stratified_kfold(y, 8, 1);
    for (const auto& f : plan.folds) {
      REQUIRE(f.size() == 2);
      CHECK(y[f[0]] + y[f[1]] == 1);
    }
    const auto few = labels_with(7, 9, 5);
    CHECK_THROWS_AS(stratified_kfold(few, 8, 1), Error);
  }

  TEST_CASE("f scores") {
    Matrix x(6, 2, {0, 3, 0, 3, 1, 3, 4, 3, 5, 3, 5, 3});
    const std::vector<int> y{0, 0, 0, 1, 1, 1};
    const auto f = univariate_f_scores(x, y);
    CHECK(f[0] == doctest::Approx(oracle::two_group_f({0, 0, 1}, {4, 5, 5})).epsilon(1e-12));
    CHECK(f[0] == doctest::Approx(84.5).epsilon(1e-12));
    CHECK(f[1] == 0.0);
  }

  TEST_CASE("f scores are invariant to row order and positive affine maps") {
    Rng rng(6);
    Matrix x(40, 3);
    std::vector<int> y(40);
    for (std::size_t r = 0; r < 40; ++r) {
      y[r] = static_cast<int>(r % 2);
      for (std::size_t j = 0; j < 3; ++j) x(r, j) = rng.normal() + y[r] * j;
    }
    const auto base = univariate_f_scores(x, y);
    std::vector<std::size_t> perm(40);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(perm);
    std::vector<int> yp(40);
    for (std::size_t i = 0; i < 40; ++i) yp[i] = y[perm[i]];
    const auto permuted = univariate_f_scores(x.select_rows(perm), yp);
    Matrix affine = x;
    for (std::size_t r = 0; r < 40; ++r)
      for (std::size_t j = 0; j < 3; ++j) affine(r, j) = 3.5 * x(r, j) - 20.0;
    const auto mapped = univariate_f_scores(affine, y);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(permuted[j] == doctest::Approx(base[j]).epsilon(1e-9));
      CHECK(mapped[j] == doctest::Approx(base[j]).epsilon(1e-9));
    }
  }

  TEST_CASE("feature selection") {
    Rng rng(7);
    Matrix x(500, 5);
    std::vector<int> y(500);
    for (std::size_t r = 0; r < 500; ++r) {
      y[r] = static_cast<int>(rng.index(2));
      for (std::size_t j = 0; j < 5; ++j) x(r, j) = rng.normal();
      x(r, 2) += 2.0 * y[r];
    }
    const Dataset d = from_matrix(x, y);
    CHECK(select_features(d, 1.0, 1).kept == std::vector<std::size_t>{0, 1, 2, 3, 4});
    const auto sel = select_features(d, 0.2, 1);
    CHECK(std::find(sel.kept.begin(), sel.kept.end(), 2) != sel.kept.end());

    // Kept set is the union of the two top-m lists.
    const auto half = select_features(d, 0.4, 3);
    auto top = [](const std::vector<double>& v, std::size_t m) {
      std::vector<std::size_t> idx(v.size());
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
      idx.resize(m);
      return std::set<std::size_t>(idx.begin(), idx.end());
    };
    auto expect = top(half.scores, 2);
    for (auto j : top(half.importances, 2)) expect.insert(j);
    CHECK(std::vector<std::size_t>(expect.begin(), expect.end()) == half.kept);
    CHECK_THROWS_AS(select_features(d, 0.0, 1), Error);
  }

  TEST_CASE("grid expansion order and json") {
    const auto combos = expand_grid(KnnGrid{});
    CHECK(combos.size() == 32);
    CHECK(std::get<KnnParams>(combos[0]).k == 1);
    CHECK(std::get<KnnParams>(combos[31]).k == 21);
    CHECK(expand_grid(TreeGrid{}).size() == 108);
    const auto j = to_json(ParamGrid{KnnGrid{{3, 5}, {Weighting::Uniform}, {Metric::Manhattan}}});
    const auto back = knn_grid_from_json(j);
    CHECK(back.k == std::vector<int>{3, 5});
    CHECK(back.metric == std::vector<Metric>{Metric::Manhattan});
    auto bad = j;
    bad["leaf_size"] = {30};
    CHECK_THROWS_AS(knn_grid_from_json(bad), Error);
    CHECK_THROWS_AS(grid_search(noisy_blobs(40, 1), KnnGrid{{}, {Weighting::Uniform}, {Metric::Euclidean}},
                                stratified_kfold(noisy_blobs(40, 1).y, 4, 1)),
                    Error);
  }

  TEST_CASE("singleton grid") {
    const Dataset d = noisy_blobs(80, 2);
    const auto folds = stratified_kfold(d.y, 8, 3);
    const auto r = grid_search(d, KnnGrid{{5}, {Weighting::Uniform}, {Metric::Euclidean}}, folds);
    REQUIRE(r.table.size() == 1);
    CHECK(r.table[0].fold_scores.size() == 8);
    CHECK(std::get<KnnParams>(r.best).k == 5);
  }

  TEST_CASE("smoothing k beats k=1 on noisy blobs, and the score matches a refit") {
    const Dataset d = noisy_blobs(200, 11);
    const auto folds = stratified_kfold(d.y, 8, 5);
    const auto r = grid_search(d, KnnGrid{{1, 9}, {Weighting::Uniform}, {Metric::Euclidean}}, folds);
    CHECK(std::get<KnnParams>(r.best).k == 9);
    CHECK(r.table[1].mean > r.table[0].mean);

    for (std::size_t c = 0; c < 2; ++c) {
      double total = 0;
      for (std::size_t f = 0; f < 8; ++f) {
        const auto tr = folds.training_positions(f);
        const auto& va = folds.folds[f];
        const Matrix xtr = d.x.select_rows(tr), xva = d.x.select_rows(va);
        std::vector<int> ytr, yva;
        for (auto i : tr) ytr.push_back(d.y[i]);
        for (auto i : va) yva.push_back(d.y[i]);
        const auto clf = fit_classifier(r.table[c].params, xtr, ytr);
        total += f1(confusion(yva, predict_labels(clf, xva)));
      }
      CHECK(std::fabs(total / 8 - r.table[c].mean) < 1e-12);
    }
    CHECK(r.best_score == r.table[r.best_index].mean);
  }

  TEST_CASE("equal scores go to the earlier combination") {
    // Far-apart clusters: every k in the grid classifies perfectly.
    Rng rng(9);
    Matrix x(64, 1);
    std::vector<int> y(64);
    for (std::size_t r = 0; r < 64; ++r) {
      y[r] = static_cast<int>(r % 2);
      x(r, 0) = rng.uniform(0, 1) + 100.0 * y[r];
    }
    const Dataset d = from_matrix(x, y);
    const auto r = grid_search(d, KnnGrid{{3, 7}, {Weighting::Uniform}, {Metric::Euclidean}}, stratified_kfold(y, 8, 1));
    CHECK(r.table[0].mean == r.table[1].mean);
    CHECK(std::get<KnnParams>(r.best).k == 3);
  }

  TEST_CASE("grid search only ever fits on training-fold rows") {
    const Dataset d = noisy_blobs(96, 4);
    const auto folds = stratified_kfold(d.y, 8, 2);
    std::vector<std::set<std::size_t>> fit_sets;
    GridSearchOptions opt;
    opt.resample = ResamplePlan{ResampleMethod::Smote, 1.0, 3, 0};
    opt.observer = [&](std::string_view stage, std::span<const std::size_t> origin) {
      if (stage == "grid_fit") fit_sets.emplace_back(origin.begin(), origin.end());
    };
    grid_search(d, KnnGrid{{1, 3}, {Weighting::Uniform}, {Metric::Euclidean}}, folds, opt);
    REQUIRE(fit_sets.size() == 16);
    for (std::size_t i = 0; i < fit_sets.size(); ++i) {
      const auto& validation = folds.folds[i % 8];
      for (std::size_t v : validation) CHECK(fit_sets[i].count(v) == 0);
    }
  }
}
