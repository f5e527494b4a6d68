#include "spineout/gaussian_nb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spineout {

double gaussian_pdf(double x, double mu, double sigma) {
  if (!(sigma > 0.0)) fail(ErrorCode::NonPositiveSigma, "sigma must be positive");
  const double z = x - mu;
  return std::exp(-z * z / (2.0 * sigma * sigma)) / std::sqrt(2.0 * std::numbers::pi * sigma * sigma);
}

double log_gaussian_pdf(double x, double mu, double sigma) {
  if (!(sigma > 0.0)) fail(ErrorCode::NonPositiveSigma, "sigma must be positive");
  const double var = sigma * sigma;
  const double z = x - mu;
  return -0.5 * std::log(2.0 * std::numbers::pi * var) - z * z / (2.0 * var);
}

GaussianNB fit_gaussian_nb(const Matrix& x, std::span<const int> y) {
  if (x.rows() != y.size()) fail(ErrorCode::LengthMismatch, "label count differs from row count");
  GaussianNB m;
  m.classes = distinct_classes(y);
  const std::size_t k = m.classes.size();
  const std::size_t d = x.cols();
  const std::size_t n = x.rows();
  std::vector<std::size_t> counts(k, 0);
  m.means = Matrix(k, d);
  m.variances = Matrix(k, d);

  auto class_of = [&](int label) {
    return static_cast<std::size_t>(std::lower_bound(m.classes.begin(), m.classes.end(), label) - m.classes.begin());
  };
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t c = class_of(y[r]);
    ++counts[c];
    for (std::size_t j = 0; j < d; ++j) m.means(c, j) += x(r, j);
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] < 2)
      fail(ErrorCode::ClassTooSmall, "class " + std::to_string(m.classes[c]) + " has fewer than 2 samples");
    for (std::size_t j = 0; j < d; ++j) m.means(c, j) /= static_cast<double>(counts[c]);
  }
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t c = class_of(y[r]);
    for (std::size_t j = 0; j < d; ++j) {
      const double dv = x(r, j) - m.means(c, j);
      m.variances(c, j) += dv * dv;
    }
  }
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < d; ++j) m.variances(c, j) /= static_cast<double>(counts[c] - 1);

  double max_var = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += x(r, j);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) ss += (x(r, j) - mean) * (x(r, j) - mean);
    max_var = std::max(max_var, ss / static_cast<double>(n - 1));
  }
  m.epsilon = 1e-9 * (max_var > 0.0 ? max_var : 1.0);

  m.priors.resize(k);
  for (std::size_t c = 0; c < k; ++c) m.priors[c] = static_cast<double>(counts[c]) / static_cast<double>(n);
  return m;
}

Prediction predict(const GaussianNB& model, std::span<const double> x) {
  check_width(model.width(), x.size());
  const std::size_t k = model.classes.size();
  std::vector<double> log_post(k);
  for (std::size_t c = 0; c < k; ++c) {
    double lp = std::log(model.priors[c]);
    for (std::size_t j = 0; j < x.size(); ++j)
      lp += log_gaussian_pdf(x[j], model.means(c, j), std::sqrt(model.variances(c, j) + model.epsilon));
    log_post[c] = lp;
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < k; ++c)
    if (log_post[c] > log_post[best]) best = c;

  Prediction p;
  p.per_class.resize(k);
  double total = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    p.per_class[c] = std::exp(log_post[c] - log_post[best]);
    total += p.per_class[c];
  }
  for (double& v : p.per_class) v /= total;
  p.label = model.classes[best];
  p.score = p.per_class[best];
  return p;
}

}  // namespace spineout
