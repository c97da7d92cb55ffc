#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace rda {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// d x n data, one sample per column.
using DataMatrix = Matrix;

enum class LabelKind { Categorical, Regression };

// Per-sample labels. Categorical values are class ids stored as doubles
// (always integral); regression values are real targets.
struct LabelVector {
  std::vector<double> values;
  LabelKind kind = LabelKind::Categorical;

  static LabelVector categorical(std::vector<double> ids) {
    return {std::move(ids), LabelKind::Categorical};
  }
  static LabelVector regression(std::vector<double> targets) {
    return {std::move(targets), LabelKind::Regression};
  }

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  bool is_categorical() const { return kind == LabelKind::Categorical; }
};

}  // namespace rda
