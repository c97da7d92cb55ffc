#pragma once

#include <cstddef>
#include <vector>

#include "rda/types.hpp"

namespace rda {

// Samples grouped by class. Classes are ordered by ascending label id.
struct ClassPartition {
  std::vector<double> class_ids;
  std::vector<std::vector<Eigen::Index>> index_sets;

  std::size_t num_classes() const { return class_ids.size(); }
  std::size_t sample_count() const;
  std::vector<std::size_t> sizes() const;
  // Throws unless the index sets are disjoint, non-empty and cover 0..n-1.
  void validate(Eigen::Index n) const;
};

ClassPartition partition_labels(const LabelVector& labels);

Vector sample_mean(const DataMatrix& x);

// X H X^T (d x d).
Matrix total_scatter(const DataMatrix& x);
// d x c, column j is the mean of class j.
Matrix class_means(const DataMatrix& x, const ClassPartition& part);
Matrix within_scatter(const DataMatrix& x, const ClassPartition& part);
Matrix between_scatter(const DataMatrix& x, const ClassPartition& part);

// Count of eigenvalues above rel * (largest eigenvalue).
std::size_t numerical_rank(const Matrix& symmetric, double rel = 1e-9);

}  // namespace rda
