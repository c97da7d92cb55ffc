#include "rda/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "rda/error.hpp"

namespace rda {
namespace {

std::string shape(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

// Eigen returns ascending order; reorder to descending.
EigPair descending(const Eigen::SelfAdjointEigenSolver<Matrix>& solver) {
  EigPair out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  canonicalize_signs(out.vectors);
  return out;
}

Eigen::Index dominant_index(const Eigen::Ref<const Vector>& col) {
  Eigen::Index arg = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < col.size(); ++i) {
    const double v = std::abs(col(i));
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  return arg;
}

bool factor_ok(const Eigen::LLT<Matrix>& llt, double pivot_rel) {
  if (llt.info() != Eigen::Success) return false;
  const Vector diag = llt.matrixLLT().diagonal();
  if (diag.size() == 0) return true;
  const double max_sq = diag.array().square().maxCoeff();
  const double min_sq = diag.array().square().minCoeff();
  return std::isfinite(min_sq) && max_sq > 0.0 && min_sq > pivot_rel * max_sq;
}

}  // namespace

std::size_t EigPair::count_valid(double rel) const {
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (is_valid(i, rel)) ++count;
  }
  return count;
}

bool EigPair::is_valid(Eigen::Index i, double rel) const {
  if (values.size() == 0) return false;
  const double top = values(0);
  return top > 0.0 && values(i) > rel * top;
}

Matrix centering_matrix(Eigen::Index n) {
  if (n <= 0) fail(ErrorKind::InvalidDimension, "centering matrix needs n >= 1");
  Matrix h = Matrix::Constant(n, n, -1.0 / static_cast<double>(n));
  h.diagonal().array() += 1.0;
  return h;
}

double asymmetry(const Matrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.transpose()).cwiseAbs().maxCoeff();
}

bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return asymmetry(a) <= tol * scale;
}

void require_symmetric(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    fail(ErrorKind::InvalidDimension, std::string(what) + " must be square, got " + shape(a));
  }
  if (!is_symmetric(a)) {
    fail(ErrorKind::InvalidInput, std::string(what) + " is not symmetric");
  }
}

Matrix symmetrized(const Matrix& a) { return 0.5 * (a + a.transpose()); }

void canonicalize_signs(Matrix& columns) {
  if (columns.rows() == 0) return;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    if (columns(dominant_index(columns.col(j)), j) < 0.0) columns.col(j) *= -1.0;
  }
}

EigPair symmetric_eig(const Matrix& a) {
  require_symmetric(a, "symmetric_eig input");
  if (a.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(a));
  if (solver.info() != Eigen::Success) fail(ErrorKind::Numerical, "eigensolver did not converge");
  return descending(solver);
}

namespace {

// Cholesky factor of B + shift I, escalating the shift until it factors.
Eigen::LLT<Matrix> loaded_cholesky(const Matrix& b, const RegPolicy& reg, double& shift) {
  const Eigen::Index m = b.rows();
  const Matrix bs = symmetrized(b);
  Eigen::LLT<Matrix> llt(bs);
  shift = 0.0;
  if (factor_ok(llt, reg.pivot_rel)) return llt;
  Eigen::SelfAdjointEigenSolver<Matrix> check(bs, Eigen::EigenvaluesOnly);
  const double fro = bs.norm();
  if (check.eigenvalues()(0) < -1e-6 * fro) {
    fail(ErrorKind::NotPsd, "generalized_eig: B is indefinite");
  }
  const double trace = bs.trace() / static_cast<double>(m);
  const double base = trace > 0.0 ? trace : 1.0;
  for (double rel = reg.initial; rel <= reg.max * (1.0 + 1e-12); rel *= reg.growth) {
    shift = rel * base;
    llt.compute(bs + shift * Matrix::Identity(m, m));
    if (factor_ok(llt, reg.pivot_rel)) return llt;
    if (reg.growth <= 1.0) break;
  }
  fail(ErrorKind::Numerical, "generalized_eig: regularization could not make B factorable");
}

EigPair finish_generalized(const Matrix& c, const Eigen::LLT<Matrix>& llt, double shift) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(c));
  if (solver.info() != Eigen::Success) fail(ErrorKind::Numerical, "eigensolver did not converge");
  EigPair out;
  out.values = solver.eigenvalues().reverse();
  Matrix y = solver.eigenvectors().rowwise().reverse();
  out.vectors = llt.matrixU().solve(y);
  canonicalize_signs(out.vectors);
  out.shift = shift;
  return out;
}

}  // namespace

EigPair generalized_eig(const Matrix& a, const Matrix& b, const RegPolicy& reg) {
  require_symmetric(a, "generalized_eig A");
  require_symmetric(b, "generalized_eig B");
  if (a.rows() != b.rows()) {
    fail(ErrorKind::InvalidDimension,
         "generalized_eig dimension mismatch: A " + shape(a) + ", B " + shape(b));
  }
  if (a.rows() == 0) return {};
  double shift = 0.0;
  const Eigen::LLT<Matrix> llt = loaded_cholesky(b, reg, shift);
  // C = L^-1 A L^-T
  const auto lower = llt.matrixL();
  Matrix half = lower.solve(symmetrized(a));
  Matrix c = lower.solve(half.transpose());
  return finish_generalized(c, llt, shift);
}

EigPair generalized_eig_factored(const Matrix& f, const Matrix& b, const RegPolicy& reg) {
  require_symmetric(b, "generalized_eig B");
  if (f.rows() != b.rows()) {
    fail(ErrorKind::InvalidDimension,
         "generalized_eig dimension mismatch: F " + shape(f) + ", B " + shape(b));
  }
  if (f.rows() == 0) return {};
  double shift = 0.0;
  const Eigen::LLT<Matrix> llt = loaded_cholesky(b, reg, shift);
  // C = G G^T with G = L^-1 F, PSD with rank <= rank(F) up to rounding
  const Matrix g = llt.matrixL().solve(f);
  const Matrix c = g * g.transpose();
  return finish_generalized(c, llt, shift);
}

Matrix psd_factor(const Matrix& s) {
  require_symmetric(s, "psd_factor input");
  if (s.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(s));
  if (solver.info() != Eigen::Success) fail(ErrorKind::Numerical, "eigensolver did not converge");
  const Vector& values = solver.eigenvalues();
  if (values(0) < -1e-6 * s.norm()) {
    fail(ErrorKind::NotPsd, "psd_factor: matrix has a significantly negative eigenvalue");
  }
  // Eigenvalues at rounding level are zero; their square roots would not be.
  const double floor = static_cast<double>(s.rows()) * std::numeric_limits<double>::epsilon() *
                       std::max(values.cwiseAbs().maxCoeff(), 0.0);
  const Vector root = (values.array() > floor).select(values.cwiseSqrt(), 0.0);
  return root.asDiagonal() * solver.eigenvectors().transpose();
}

SvdFactor incomplete_svd(const Matrix& w, Eigen::Index k) {
  const Eigen::Index limit = std::min(w.rows(), w.cols());
  if (k < 1 || k > limit) {
    fail(ErrorKind::InvalidDimension,
         "incomplete_svd: k=" + std::to_string(k) + " outside [1, " + std::to_string(limit) + "]");
  }
  Eigen::BDCSVD<Matrix> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdFactor out;
  out.left = svd.matrixU().leftCols(k);
  out.singular = svd.singularValues().head(k);
  out.right = svd.matrixV().leftCols(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    if (out.right(dominant_index(out.right.col(j)), j) < 0.0) {
      out.right.col(j) *= -1.0;
      out.left.col(j) *= -1.0;
    }
  }
  return out;
}

}  // namespace rda
