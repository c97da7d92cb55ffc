#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rda/kernels.hpp"
#include "rda/types.hpp"

namespace rda {

// How V and Sigma are obtained from the factor W of R1 = W W^T.
enum class DualRoute {
  Auto,       // GramEigen when n < d, Svd otherwise
  GramEigen,  // eigendecomposition of W^T W
  Svd,        // incomplete SVD of W
};

std::string to_string(DualRoute route);
DualRoute parse_dual_route(const std::string& name);

struct DualConfig {
  double r1 = 0.0;
  // The dual form only exists for r2 = 0; any other value is rejected.
  double r2 = 0.0;
  std::optional<Eigen::Index> dims;
  std::optional<KernelSpec> label_kernel;
  DualRoute route = DualRoute::Auto;
  double auto_ratio = 0.01;
  // Singular values below this share of the largest are dropped.
  double singular_cutoff = 1e-10;

  void validate() const;
};

struct DualRdaModel {
  Matrix v;          // k x p right singular vectors
  Vector sigma;      // p, strictly positive
  Matrix factor_w;   // d x k with W W^T = R1
  Vector mean;       // d
  double r1 = 0.0;
  std::optional<KernelSpec> label_kernel;  // resolved, when r1 > 0
  DualRoute route = DualRoute::Auto;       // route actually taken
  std::vector<std::string> warnings;

  Eigen::Index input_dim() const { return factor_w.rows(); }
  Eigen::Index dims() const { return sigma.size(); }
};

// W such that W W^T = X H P H X^T: X H for r1 = 0, X H Upsilon for r1 = 1,
// and Psi_R Omega_R^(1/2) truncated to min(d, n) columns otherwise.
Matrix dual_factor(const DataMatrix& x, const LabelVector& labels, double r1,
                   const std::optional<KernelSpec>& label_kernel);

DualRdaModel fit_dual(const DataMatrix& x, const LabelVector& labels, const DualConfig& cfg);

// Sigma^-1 V^T W^T (X - mu).
Matrix project_dual(const DualRdaModel& model, const DataMatrix& x);
// W V Sigma^-2 V^T W^T (X - mu) + mu.
Matrix reconstruct_dual(const DualRdaModel& model, const DataMatrix& x);

}  // namespace rda
