#pragma once

#include <span>
#include <vector>

#include "spineout/matrix.hpp"
#include "spineout/prediction.hpp"

namespace spineout {

// Normal density 1/sqrt(2 pi sigma^2) * exp(-(x-mu)^2 / (2 sigma^2)).
double gaussian_pdf(double x, double mu, double sigma);
double log_gaussian_pdf(double x, double mu, double sigma);

struct GaussianNB {
  std::vector<int> classes;
  std::vector<double> priors;
  Matrix means;      // class x feature
  Matrix variances;  // class x feature, sample variance (n-1)
  double epsilon = 0.0;

  std::size_t width() const noexcept { return means.cols(); }
};

// Priors are class frequencies; epsilon = 1e-9 * largest overall feature
// variance (1e-9 when every feature is constant) is added to every variance at
// prediction time.
GaussianNB fit_gaussian_nb(const Matrix& x, std::span<const int> y);

// Argmax of log prior + sum of log densities; ties go to the lowest label.
// per_class holds normalized posteriors.
Prediction predict(const GaussianNB& model, std::span<const double> x);

}  // namespace spineout
