#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rda/core.hpp"
#include "rda/kernels.hpp"
#include "rda/scatter.hpp"
#include "rda/types.hpp"

namespace rda {

enum class KernelVariant {
  Direct,     // representation theory, any (r1, r2)
  TrickPca,   // kernel trick, r1 = r2 = 0
  TrickSpca,  // kernel trick, r1 = 1, r2 = 0
};

std::string to_string(KernelVariant variant);
KernelVariant parse_kernel_variant(const std::string& name);

struct KernelRdaModel {
  KernelVariant variant = KernelVariant::Direct;
  KernelSpec kernel;        // resolved
  RoweisConfig config;      // label_kernel resolved when labels were used
  DataMatrix train_x;       // d x n

  // Direct variant: Theta (n x p) with Theta^T L' Theta = I.
  Matrix theta;
  // Trick variants: V (m x p), Sigma (p), Upsilon (n x n, SPCA only), and the
  // training kernel statistics needed to center out-of-sample kernels.
  Matrix v;
  Vector sigma;
  Matrix upsilon;
  Vector train_row_means;
  double train_grand_mean = 0.0;

  Vector eigvals;     // p retained eigenvalues (Sigma^2 for trick variants)
  Vector spectrum;    // full spectrum
  std::size_t valid_count = 0;
  double regularization = 0.0;
  double residual = 0.0;
  std::vector<std::string> warnings;

  Eigen::Index input_dim() const { return train_x.rows(); }
  Eigen::Index sample_count() const { return train_x.cols(); }
  Eigen::Index dims() const;
};

// M = K_x H P H K_x.
Matrix build_M(const Matrix& k_x, const Matrix& p);
// N = sum_j K_j H_j K_j^T, with K_j the columns of K_x belonging to class j.
Matrix build_N(const Matrix& k_x, const ClassPartition& part);
// L = r2 N + (1 - r2) K_x.
Matrix build_L(const Matrix& n_matrix, const Matrix& k_x, double r2);

// Upper bound on the number of meaningful directions: min(n, c) - 1 when
// r2 = 1, otherwise n - 1.
Eigen::Index kernel_dimension_bound(Eigen::Index n, std::size_t classes, double r2);

KernelRdaModel fit_direct(const DataMatrix& x, const LabelVector& labels, const RoweisConfig& cfg,
                          const KernelSpec& kernel);

KernelRdaModel fit_kernel_pca(const DataMatrix& x, const KernelSpec& kernel,
                              std::optional<Eigen::Index> dims = std::nullopt);

KernelRdaModel fit_kernel_spca(const DataMatrix& x, const LabelVector& labels,
                               const KernelSpec& kernel_x,
                               const std::optional<KernelSpec>& kernel_y = std::nullopt,
                               std::optional<Eigen::Index> dims = std::nullopt);

// Theta^T K_t for the direct variant; Sigma^-1 V^T K~_t (PCA) and
// Sigma^-1 V^T Upsilon^T K~_t (SPCA) for the trick variants, where K~_t is the
// centered train/test kernel.
Matrix project_kernel(const KernelRdaModel& model, const DataMatrix& x);

// Embedding of the training set: Theta^T K_x (direct), Sigma V^T (PCA),
// Sigma^-1 V^T Upsilon^T H K_x H (SPCA).
Matrix training_embedding(const KernelRdaModel& model);

}  // namespace rda
