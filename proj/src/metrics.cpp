#include "spineout/metrics.hpp"

#include <string>

#include "spineout/error.hpp"

namespace spineout {

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) fail(ErrorCode::LengthMismatch, "y_true and y_pred differ in length");
  if (y_true.empty()) fail(ErrorCode::LengthMismatch, "confusion matrix needs at least one row");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i];
    const int p = y_pred[i];
    if ((t != 0 && t != 1) || (p != 0 && p != 1))
      fail(ErrorCode::NonBinaryLabel, "labels must be 0 or 1 (row " + std::to_string(i) + ")");
    if (t == 1) {
      p == 1 ? ++cm.tp : ++cm.fn;
    } else {
      p == 1 ? ++cm.fp : ++cm.tn;
    }
  }
  return cm;
}

namespace {

void require_rows(const ConfusionMatrix& cm) {
  if (cm.total() == 0) fail(ErrorCode::EmptyMatrix, "empty confusion matrix");
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

}  // namespace

double accuracy(const ConfusionMatrix& cm) {
  require_rows(cm);
  return ratio(cm.tp + cm.tn, cm.total());
}

double precision(const ConfusionMatrix& cm) {
  require_rows(cm);
  return ratio(cm.tp, cm.tp + cm.fp);
}

double recall(const ConfusionMatrix& cm) {
  require_rows(cm);
  return ratio(cm.tp, cm.tp + cm.fn);
}

double f1(const ConfusionMatrix& cm) { return harmonic(precision(cm), recall(cm)); }

double f1_negative(const ConfusionMatrix& cm) {
  require_rows(cm);
  return harmonic(ratio(cm.tn, cm.tn + cm.fn), ratio(cm.tn, cm.tn + cm.fp));
}

double macro_f1(const ConfusionMatrix& cm) { return 0.5 * (f1(cm) + f1_negative(cm)); }

double class_recall(const ConfusionMatrix& cm, int label) {
  require_rows(cm);
  return label == 1 ? ratio(cm.tp, cm.tp + cm.fn) : ratio(cm.tn, cm.tn + cm.fp);
}

}  // namespace spineout
