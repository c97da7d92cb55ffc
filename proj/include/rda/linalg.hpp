#pragma once

#include <cstddef>

#include "rda/types.hpp"

namespace rda {

// Relative cutoff below which an eigenvalue is reported but not counted as
// valid (relative to the largest eigenvalue).
inline constexpr double kInvalidEigRel = 1e-10;

// Absolute asymmetry tolerance, scaled by max(1, max |A_ij|).
inline constexpr double kSymmetryTol = 1e-10;

// Eigenvectors are columns of `vectors`; `values` is non-increasing.
// Columns are unit-norm (plain problem) or unit B'-norm (generalized problem),
// and the entry of largest magnitude in each column is positive.
struct EigPair {
  Matrix vectors;
  Vector values;
  // Diagonal shift added to B before factoring (generalized problem only).
  double shift = 0.0;

  Eigen::Index size() const { return values.size(); }
  std::size_t count_valid(double rel = kInvalidEigRel) const;
  bool is_valid(Eigen::Index i, double rel = kInvalidEigRel) const;
};

struct SvdFactor {
  Matrix left;
  Vector singular;
  Matrix right;
};

// Diagonal loading for singular constraint matrices. All values are relative
// to trace(B)/m. The shift starts at `initial` and is multiplied by `growth`
// until the Cholesky factorization succeeds or `max` is exceeded.
struct RegPolicy {
  double initial = 1e-8;
  double growth = 10.0;
  double max = 1e-2;
  // A pivot L_ii^2 below pivot_rel * max_k L_kk^2 counts as a failed factorization.
  double pivot_rel = 1e-12;
};

Matrix centering_matrix(Eigen::Index n);

double asymmetry(const Matrix& a);
bool is_symmetric(const Matrix& a, double tol = kSymmetryTol);
void require_symmetric(const Matrix& a, const char* what);
Matrix symmetrized(const Matrix& a);

// Flips each column so that its entry of largest magnitude is positive.
// Ties resolve to the lowest row index.
void canonicalize_signs(Matrix& columns);

EigPair symmetric_eig(const Matrix& a);

// Solves A u = B' u lambda with B' = B + shift I via Cholesky reduction.
EigPair generalized_eig(const Matrix& a, const Matrix& b, const RegPolicy& reg = {});
// Same problem with A = F F^T given through its factor F (m x k).
EigPair generalized_eig_factored(const Matrix& f, const Matrix& b, const RegPolicy& reg = {});

// Returns Delta (m x m) with Delta^T Delta = S.
Matrix psd_factor(const Matrix& s);

// Thin SVD truncated to the k leading singular triplets. The sign
// convention is applied to the right singular vectors.
SvdFactor incomplete_svd(const Matrix& w, Eigen::Index k);

}  // namespace rda
