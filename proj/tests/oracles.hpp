#pragma once

// Slow, obviously-correct reference implementations used to cross-check the
// library. Nothing here calls into the code under test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline std::vector<int> sorted_classes(const std::vector<int>& y) {
  std::vector<int> c = y;
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

struct Posterior {
  int label = 0;
  std::vector<double> posteriors;
};

// Direct Bayes: prior times the product of normal densities, normalized.
inline Posterior gaussian_bayes(const Rows& x, const std::vector<int>& y, const std::vector<double>& q) {
  const auto classes = sorted_classes(y);
  const std::size_t d = q.size();
  long double max_var = 0;
  for (std::size_t j = 0; j < d; ++j) {
    long double mean = 0;
    for (const auto& r : x) mean += r[j];
    mean /= x.size();
    long double ss = 0;
    for (const auto& r : x) ss += (r[j] - mean) * (r[j] - mean);
    max_var = std::max(max_var, ss / (x.size() - 1));
  }
  const long double eps = 1e-9L * (max_var > 0 ? max_var : 1.0L);
  std::vector<long double> joint;
  for (int c : classes) {
    std::vector<const std::vector<double>*> members;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (y[i] == c) members.push_back(&x[i]);
    long double p = static_cast<long double>(members.size()) / x.size();
    for (std::size_t j = 0; j < d; ++j) {
      long double mean = 0;
      for (auto* m : members) mean += (*m)[j];
      mean /= members.size();
      long double var = 0;
      for (auto* m : members) var += ((*m)[j] - mean) * ((*m)[j] - mean);
      var = var / (members.size() - 1) + eps;
      const long double z = q[j] - mean;
      p *= std::exp(-z * z / (2 * var)) / std::sqrt(2 * std::numbers::pi_v<long double> * var);
    }
    joint.push_back(p);
  }
  Posterior out;
  long double total = 0;
  for (auto v : joint) total += v;
  std::size_t best = 0;
  for (std::size_t c = 0; c < joint.size(); ++c) {
    out.posteriors.push_back(static_cast<double>(joint[c] / total));
    if (joint[c] > joint[best]) best = c;
  }
  out.label = classes[best];
  return out;
}

inline double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

inline double manhattan(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += std::fabs(a[j] - b[j]);
  return s;
}

struct Neighbors {
  int label = 0;
  std::vector<std::size_t> rows;
};

// Full sort of (distance, row) pairs, then a weighted vote.
inline Neighbors knn(const Rows& x, const std::vector<int>& y, const std::vector<double>& q, std::size_t k,
                     bool manhattan_metric, bool inverse_distance) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < x.size(); ++i)
    all.emplace_back(manhattan_metric ? manhattan(q, x[i]) : euclidean(q, x[i]), i);
  std::sort(all.begin(), all.end());
  all.resize(k);
  const auto classes = sorted_classes(y);
  std::vector<double> w(classes.size(), 0), dsum(classes.size(), 0);
  Neighbors out;
  for (const auto& [dist, i] : all) {
    const auto c = static_cast<std::size_t>(std::find(classes.begin(), classes.end(), y[i]) - classes.begin());
    w[c] += inverse_distance ? 1.0 / (dist + 1e-12) : 1.0;
    dsum[c] += dist;
    out.rows.push_back(i);
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < classes.size(); ++c)
    if (w[c] > w[best] || (w[c] == w[best] && dsum[c] < dsum[best])) best = c;
  out.label = classes[best];
  return out;
}

inline double gini(const std::vector<double>& counts) {
  double n = 0, s = 0;
  for (double c : counts) n += c;
  for (double c : counts) s += (c / n) * (c / n);
  return 1 - s;
}

inline double entropy(const std::vector<double>& counts) {
  double n = 0, h = 0;
  for (double c : counts) n += c;
  for (double c : counts)
    if (c > 0) h -= (c / n) * std::log2(c / n);
  return h;
}

// Best impurity decrease over every feature and every midpoint between
// consecutive distinct values.
inline double best_root_decrease(const Rows& x, const std::vector<int>& y, bool use_entropy) {
  const auto classes = sorted_classes(y);
  auto counts_where = [&](auto pred) {
    std::vector<double> c(classes.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (pred(i)) c[std::find(classes.begin(), classes.end(), y[i]) - classes.begin()] += 1;
    return c;
  };
  auto imp = [&](const std::vector<double>& c) { return use_entropy ? entropy(c) : gini(c); };
  const double parent = imp(counts_where([](std::size_t) { return true; }));
  const double n = static_cast<double>(x.size());
  double best = 0;
  for (std::size_t f = 0; f < x[0].size(); ++f) {
    std::vector<double> values;
    for (const auto& r : x) values.push_back(r[f]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t v = 0; v + 1 < values.size(); ++v) {
      const double t = (values[v] + values[v + 1]) / 2;
      const auto l = counts_where([&](std::size_t i) { return x[i][f] <= t; });
      const auto r = counts_where([&](std::size_t i) { return x[i][f] > t; });
      double nl = 0;
      for (double c : l) nl += c;
      const double dec = parent - nl / n * imp(l) - (n - nl) / n * imp(r);
      best = std::max(best, dec);
    }
  }
  return best;
}

inline double point_segment_distance(const std::vector<double>& p, const std::vector<double>& a,
                                     const std::vector<double>& b) {
  double ab2 = 0, t = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    ab2 += (b[j] - a[j]) * (b[j] - a[j]);
    t += (p[j] - a[j]) * (b[j] - a[j]);
  }
  t = ab2 > 0 ? std::clamp(t / ab2, 0.0, 1.0) : 0.0;
  double s = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double c = a[j] + t * (b[j] - a[j]);
    s += (p[j] - c) * (p[j] - c);
  }
  return std::sqrt(s);
}

// Indices of the k nearest other points (euclidean, full sort).
inline std::vector<std::size_t> nearest_others(const Rows& pts, std::size_t i, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (j != i) all.emplace_back(euclidean(pts[i], pts[j]), j);
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < k && m < all.size(); ++m) out.push_back(all[m].second);
  return out;
}

struct Counts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

inline Counts count(const std::vector<int>& t, const std::vector<int>& p) {
  Counts c;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 1 && p[i] == 1) ++c.tp;
    if (t[i] == 0 && p[i] == 1) ++c.fp;
    if (t[i] == 0 && p[i] == 0) ++c.tn;
    if (t[i] == 1 && p[i] == 0) ++c.fn;
  }
  return c;
}

// Two-group ANOVA F computed as the squared pooled-variance t statistic.
inline double two_group_f(const std::vector<double>& a, const std::vector<double>& b) {
  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / v.size();
  };
  const double ma = mean(a), mb = mean(b);
  double ss = 0;
  for (double x : a) ss += (x - ma) * (x - ma);
  for (double x : b) ss += (x - mb) * (x - mb);
  const double pooled = ss / (a.size() + b.size() - 2);
  const double t = (ma - mb) / std::sqrt(pooled * (1.0 / a.size() + 1.0 / b.size()));
  return t * t;
}

}  // namespace oracle

namespace testutil {

inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::path(SPINEOUT_TEST_TMP) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace testutil
