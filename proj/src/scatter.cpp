#include "rda/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "rda/error.hpp"
#include "rda/linalg.hpp"

namespace rda {

std::size_t ClassPartition::sample_count() const {
  std::size_t total = 0;
  for (const auto& set : index_sets) total += set.size();
  return total;
}

std::vector<std::size_t> ClassPartition::sizes() const {
  std::vector<std::size_t> out;
  out.reserve(index_sets.size());
  for (const auto& set : index_sets) out.push_back(set.size());
  return out;
}

void ClassPartition::validate(Eigen::Index n) const {
  if (class_ids.size() != index_sets.size()) {
    fail(ErrorKind::InvalidInput, "partition: class id / index set count mismatch");
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (std::size_t j = 0; j < index_sets.size(); ++j) {
    if (index_sets[j].empty()) {
      fail(ErrorKind::InvalidInput, "partition: class " + std::to_string(j) + " is empty");
    }
    for (Eigen::Index i : index_sets[j]) {
      if (i < 0 || i >= n) fail(ErrorKind::InvalidInput, "partition: sample index out of range");
      if (seen[static_cast<std::size_t>(i)]) {
        fail(ErrorKind::InvalidInput, "partition: sample " + std::to_string(i) + " appears twice");
      }
      seen[static_cast<std::size_t>(i)] = 1;
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    fail(ErrorKind::InvalidInput, "partition does not cover every sample");
  }
}

ClassPartition partition_labels(const LabelVector& labels) {
  if (!labels.is_categorical()) {
    fail(ErrorKind::InvalidLabel, "class partition needs categorical labels");
  }
  std::map<double, std::vector<Eigen::Index>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    groups[labels.values[i]].push_back(static_cast<Eigen::Index>(i));
  }
  ClassPartition part;
  for (auto& [id, members] : groups) {
    part.class_ids.push_back(id);
    part.index_sets.push_back(std::move(members));
  }
  return part;
}

Vector sample_mean(const DataMatrix& x) {
  if (x.cols() == 0) fail(ErrorKind::InvalidInput, "mean of an empty data matrix");
  return x.rowwise().mean();
}

Matrix total_scatter(const DataMatrix& x) {
  if (x.cols() == 0) fail(ErrorKind::InvalidInput, "total scatter of an empty data matrix");
  const Matrix centered = x.colwise() - sample_mean(x);
  return symmetrized(centered * centered.transpose());
}

Matrix class_means(const DataMatrix& x, const ClassPartition& part) {
  part.validate(x.cols());
  Matrix means(x.rows(), static_cast<Eigen::Index>(part.num_classes()));
  for (std::size_t j = 0; j < part.num_classes(); ++j) {
    Vector sum = Vector::Zero(x.rows());
    for (Eigen::Index i : part.index_sets[j]) sum += x.col(i);
    means.col(static_cast<Eigen::Index>(j)) = sum / static_cast<double>(part.index_sets[j].size());
  }
  return means;
}

Matrix within_scatter(const DataMatrix& x, const ClassPartition& part) {
  const Matrix means = class_means(x, part);
  Matrix centered(x.rows(), x.cols());
  for (std::size_t j = 0; j < part.num_classes(); ++j) {
    for (Eigen::Index i : part.index_sets[j]) {
      centered.col(i) = x.col(i) - means.col(static_cast<Eigen::Index>(j));
    }
  }
  return symmetrized(centered * centered.transpose());
}

Matrix between_scatter(const DataMatrix& x, const ClassPartition& part) {
  const Matrix means = class_means(x, part);
  const Vector mu = sample_mean(x);
  Matrix weighted(x.rows(), means.cols());
  for (Eigen::Index j = 0; j < means.cols(); ++j) {
    const double nj = static_cast<double>(part.index_sets[static_cast<std::size_t>(j)].size());
    weighted.col(j) = std::sqrt(nj) * (means.col(j) - mu);
  }
  return symmetrized(weighted * weighted.transpose());
}

std::size_t numerical_rank(const Matrix& symmetric, double rel) {
  require_symmetric(symmetric, "numerical_rank input");
  if (symmetric.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(symmetric), Eigen::EigenvaluesOnly);
  const Vector& values = solver.eigenvalues();
  const double top = values.maxCoeff();
  if (!(top > 0.0)) return 0;
  return static_cast<std::size_t>((values.array() > rel * top).count());
}

}  // namespace rda
