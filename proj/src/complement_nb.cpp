#include "spineout/complement_nb.hpp"

#include <algorithm>
#include <cmath>

namespace spineout {

namespace {

void check_non_negative(std::span<const double> x, std::size_t row) {
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < 0.0)
      fail(ErrorCode::NegativeFeature,
           "negative feature at row " + std::to_string(row) + ", column " + std::to_string(j));
}

}  // namespace

ComplementNB fit_complement_nb(const Matrix& x, std::span<const int> y, double alpha, bool normalize) {
  if (x.rows() != y.size()) fail(ErrorCode::LengthMismatch, "label count differs from row count");
  if (!(alpha > 0.0)) fail(ErrorCode::InvalidArgument, "alpha must be positive");
  for (std::size_t r = 0; r < x.rows(); ++r) check_non_negative(x.row(r), r);

  ComplementNB m;
  m.classes = distinct_classes(y);
  m.alpha = alpha;
  m.normalize = normalize;
  const std::size_t k = m.classes.size();
  const std::size_t d = x.cols();

  m.weights = Matrix(k, d);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> comp(d);
    double comp_total = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < x.rows(); ++r)
        if (y[r] != m.classes[c]) s += x(r, j);
      comp[j] = s;
      comp_total += s;
    }
    const double denom = alpha * static_cast<double>(d) + comp_total;
    double abs_sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      m.weights(c, j) = std::log((alpha + comp[j]) / denom);
      abs_sum += std::fabs(m.weights(c, j));
    }
    if (normalize && abs_sum > 0.0)
      for (std::size_t j = 0; j < d; ++j) m.weights(c, j) /= abs_sum;
  }
  return m;
}

Prediction predict(const ComplementNB& model, std::span<const double> x) {
  check_width(model.width(), x.size());
  check_non_negative(x, 0);
  const std::size_t k = model.classes.size();
  Prediction p;
  p.per_class.assign(k, 0.0);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < x.size(); ++j) p.per_class[c] += x[j] * model.weights(c, j);

  std::size_t best = 0;
  for (std::size_t c = 1; c < k; ++c)
    if (p.per_class[c] < p.per_class[best]) best = c;
  double total = 0.0;
  for (std::size_t c = 0; c < k; ++c) total += std::exp(p.per_class[best] - p.per_class[c]);
  p.label = model.classes[best];
  p.score = 1.0 / total;
  return p;
}

}  // namespace spineout
