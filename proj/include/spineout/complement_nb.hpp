#pragma once

#include <span>
#include <vector>

#include "spineout/matrix.hpp"
#include "spineout/prediction.hpp"

namespace spineout {

// Complement naive Bayes (Rennie et al. 2003) for non-negative features.
struct ComplementNB {
  std::vector<int> classes;
  Matrix weights;  // class x feature, log of the smoothed complement frequency
  double alpha = 1.0;
  bool normalize = false;

  std::size_t width() const noexcept { return weights.cols(); }
};

ComplementNB fit_complement_nb(const Matrix& x, std::span<const int> y, double alpha = 1.0, bool normalize = false);

// Score per class is sum_j x_j * w_cj; the label with the smallest score wins
// (ties to the lowest label). per_class holds the raw scores and `score` is the
// winner's share of softmax(-scores).
Prediction predict(const ComplementNB& model, std::span<const double> x);

}  // namespace spineout
