#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rda/kernels.hpp"
#include "rda/linalg.hpp"
#include "rda/types.hpp"

namespace rda {

// Position on the (r1, r2) map plus the numerical policy for the fit.
struct RoweisConfig {
  double r1 = 0.0;
  double r2 = 0.0;
  // Target dimensionality; unset picks it from the spectrum (see auto_ratio).
  std::optional<Eigen::Index> dims;
  // Unset selects delta for class labels and median-heuristic RBF for targets.
  std::optional<KernelSpec> label_kernel;
  bool robust = false;
  RegPolicy reg;
  // Eigenvalues below valid_eig_threshold * lambda_max are invalid.
  double valid_eig_threshold = 1e-9;
  // Automatic dimensionality keeps eigenvalues carrying at least this share.
  double auto_ratio = 0.01;

  void validate() const;
  bool uses_labels() const { return r1 > 0.0 || r2 > 0.0; }
};

struct RdaModel {
  Matrix basis;      // d x p
  Vector eigvals;    // p, non-increasing
  Vector mean;       // d
  RoweisConfig config;  // label_kernel resolved at fit time
  Vector spectrum;   // full generalized spectrum
  std::size_t valid_count = 0;
  double regularization = 0.0;  // shift added to R2 (or to its robust repair)
  double residual = 0.0;        // ||R1 U - R2' U L||_F / ||R1||_F over the basis
  std::vector<std::string> warnings;

  Eigen::Index input_dim() const { return basis.rows(); }
  Eigen::Index dims() const { return basis.cols(); }
};

// P = r1 K_y + (1 - r1) I.
Matrix build_P(const Matrix& k_y, double r1);
// R1 = X H P H X^T.
Matrix build_R1(const DataMatrix& x, const Matrix& p);
// R2 = r2 S_W + (1 - r2) I.
Matrix build_R2(const Matrix& s_w, double r2);

// Smallest m whose leading eigenvalues hold `energy` of the total.
Eigen::Index robust_cutoff(const Vector& descending, double energy = 0.98);
// Replaces the eigenvalues past the cutoff with their mean.
Vector robust_spectrum(const Vector& descending, double energy = 0.98);
// Eigendecomposes R2 and rebuilds it with the repaired spectrum.
Matrix robustify(const Matrix& r2, const RegPolicy& reg = {}, double energy = 0.98);

RdaModel fit(const DataMatrix& x, const LabelVector& labels, const RoweisConfig& cfg);

// U^T (X - mu).
Matrix project(const RdaModel& model, const DataMatrix& x);
// U U^T (X - mu) + mu.
Matrix reconstruct(const RdaModel& model, const DataMatrix& x);

double supervision_level(double r1, double r2);

// Number of eigenvalues whose share of the total is at least ratio_threshold.
Eigen::Index choose_dimensionality(const Vector& eigvals, double ratio_threshold);

// Shared helpers for the fitting modules.
void check_roweis_factor(double r, const char* name);
void check_labels(const LabelVector& labels, Eigen::Index n, bool required);
Eigen::Index count_valid(const Vector& spectrum, double rel);

}  // namespace rda
