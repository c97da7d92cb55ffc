#pragma once

#include <optional>
#include <string>

#include "rda/types.hpp"

namespace rda {

enum class KernelFamily { Linear, Rbf, Polynomial, Delta };

// Kernel family plus hyperparameters. An RBF spec without gamma is resolved
// from training data with the median heuristic before use.
struct KernelSpec {
  KernelFamily family = KernelFamily::Linear;
  std::optional<double> gamma;
  int degree = 2;
  double offset = 1.0;

  static KernelSpec linear() { return {}; }
  static KernelSpec rbf(std::optional<double> gamma = std::nullopt) {
    return {KernelFamily::Rbf, gamma, 2, 1.0};
  }
  static KernelSpec polynomial(int degree, double offset = 1.0) {
    return {KernelFamily::Polynomial, std::nullopt, degree, offset};
  }
  static KernelSpec delta() { return {KernelFamily::Delta, std::nullopt, 2, 1.0}; }

  bool resolved() const { return family != KernelFamily::Rbf || gamma.has_value(); }
  void validate() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

std::string to_string(KernelFamily family);
KernelFamily parse_kernel_family(const std::string& name);
std::string describe(const KernelSpec& spec);

// 1 / (2 * median^2) over pairwise distances of the columns of x.
double median_heuristic_gamma(const DataMatrix& x);

// Fills in an unset RBF gamma from `x`; other specs are returned unchanged.
KernelSpec resolve(const KernelSpec& spec, const DataMatrix& x);

double kernel_value(const KernelSpec& spec, const Eigen::Ref<const Vector>& a,
                    const Eigen::Ref<const Vector>& b);

// entries(i, j) = k(a_i, b_j).
Matrix gram(const KernelSpec& spec, const DataMatrix& a, const DataMatrix& b);

// entries(i, j) = [y1_i == y2_j]; categorical labels only.
Matrix delta_kernel(const LabelVector& y1, const LabelVector& y2);

// Label kernel K_y. Delta specs use delta_kernel; other families treat the
// labels as one-dimensional data.
Matrix label_gram(const KernelSpec& spec, const LabelVector& y1, const LabelVector& y2);

// Default label kernel: delta for classes, median-heuristic RBF for targets.
KernelSpec default_label_kernel(const LabelVector& y);
KernelSpec resolve_label_kernel(const std::optional<KernelSpec>& spec, const LabelVector& y);
DataMatrix labels_as_row(const LabelVector& y);

// H K H.
Matrix double_center(const Matrix& k);

// Centers an n x n_t train/test kernel using the n x n training kernel.
Matrix center_test_kernel(const Matrix& k_train, const Matrix& k_test);

}  // namespace rda
