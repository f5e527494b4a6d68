#pragma once

#include <cstddef>
#include <span>

namespace spineout {

// Positive class is label 1 (success).
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred);

double accuracy(const ConfusionMatrix& cm);
// Degenerate denominators give 0.
double precision(const ConfusionMatrix& cm);
double recall(const ConfusionMatrix& cm);
double f1(const ConfusionMatrix& cm);
// F1 with label 0 treated as positive.
double f1_negative(const ConfusionMatrix& cm);
double macro_f1(const ConfusionMatrix& cm);
// Recall of the given class (label 1: sensitivity, label 0: specificity).
double class_recall(const ConfusionMatrix& cm, int label);

}  // namespace spineout
