#include "rda/core.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "rda/error.hpp"
#include "rda/scatter.hpp"

namespace rda {

void check_roweis_factor(double r, const char* name) {
  if (!(r >= 0.0 && r <= 1.0)) {
    fail(ErrorKind::InvalidConfig, std::string(name) + " must lie in [0, 1], got " + std::to_string(r));
  }
}

void check_labels(const LabelVector& labels, Eigen::Index n, bool required) {
  if (!required && labels.empty()) return;
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    fail(ErrorKind::InvalidLabel, "expected " + std::to_string(n) + " labels, got " +
                                      std::to_string(labels.size()));
  }
}

Eigen::Index count_valid(const Vector& spectrum, double rel) {
  if (spectrum.size() == 0) return 0;
  const double top = spectrum.maxCoeff();
  if (!(top > 0.0)) return 0;
  return static_cast<Eigen::Index>((spectrum.array() > rel * top).count());
}

void RoweisConfig::validate() const {
  check_roweis_factor(r1, "r1");
  check_roweis_factor(r2, "r2");
  if (dims && *dims < 1) fail(ErrorKind::InvalidConfig, "target dimensionality must be >= 1");
  if (!(valid_eig_threshold > 0.0)) fail(ErrorKind::InvalidConfig, "validity threshold must be positive");
  if (!(auto_ratio >= 0.0 && auto_ratio <= 1.0)) {
    fail(ErrorKind::InvalidConfig, "auto dimensionality ratio must lie in [0, 1]");
  }
  if (label_kernel) label_kernel->validate();
}

Matrix build_P(const Matrix& k_y, double r1) {
  check_roweis_factor(r1, "r1");
  if (k_y.rows() != k_y.cols()) fail(ErrorKind::InvalidDimension, "K_y must be square");
  const Eigen::Index n = k_y.rows();
  return symmetrized(r1 * k_y + (1.0 - r1) * Matrix::Identity(n, n));
}

Matrix build_R1(const DataMatrix& x, const Matrix& p) {
  if (p.rows() != x.cols() || p.cols() != x.cols()) {
    fail(ErrorKind::InvalidDimension, "build_R1: P must be n x n with n = " + std::to_string(x.cols()));
  }
  if (x.cols() == 0) fail(ErrorKind::InvalidInput, "build_R1: empty data");
  const Matrix centered = x.colwise() - x.rowwise().mean();
  return symmetrized(centered * p * centered.transpose());
}

Matrix build_R2(const Matrix& s_w, double r2) {
  check_roweis_factor(r2, "r2");
  if (s_w.rows() != s_w.cols()) fail(ErrorKind::InvalidDimension, "S_W must be square");
  const Eigen::Index d = s_w.rows();
  return symmetrized(r2 * s_w + (1.0 - r2) * Matrix::Identity(d, d));
}

Eigen::Index robust_cutoff(const Vector& descending, double energy) {
  const Vector clamped = descending.cwiseMax(0.0);
  const double total = clamped.sum();
  if (!(total > 0.0)) return 0;
  double running = 0.0;
  for (Eigen::Index m = 0; m < clamped.size(); ++m) {
    running += clamped(m);
    if (running / total >= energy * (1.0 - 1e-12)) return m + 1;
  }
  return clamped.size();
}

Vector robust_spectrum(const Vector& descending, double energy) {
  Vector out = descending.cwiseMax(0.0);
  const Eigen::Index keep = robust_cutoff(descending, energy);
  const Eigen::Index tail = out.size() - keep;
  if (keep == 0 || tail == 0) return out;
  const double replacement = out.tail(tail).mean();
  out.tail(tail).setConstant(replacement);
  return out;
}

Matrix robustify(const Matrix& r2, const RegPolicy& reg, double energy) {
  require_symmetric(r2, "robustify input");
  const Eigen::Index d = r2.rows();
  const EigPair eig = symmetric_eig(r2);
  const Eigen::Index keep = robust_cutoff(eig.values, energy);
  if (keep == 0) return reg.initial * Matrix::Identity(d, d);
  if (keep == d) return r2;
  const Vector repaired = robust_spectrum(eig.values, energy);
  return symmetrized(eig.vectors * repaired.asDiagonal() * eig.vectors.transpose());
}

RdaModel fit(const DataMatrix& x, const LabelVector& labels, const RoweisConfig& cfg) {
  cfg.validate();
  const Eigen::Index d = x.rows();
  const Eigen::Index n = x.cols();
  if (n < 2) fail(ErrorKind::InvalidInput, "fit needs at least two samples");
  if (!x.allFinite()) fail(ErrorKind::InvalidInput, "data contains NaN or Inf");
  check_labels(labels, n, cfg.uses_labels());
  if (cfg.r2 > 0.0 && !labels.is_categorical()) {
    fail(ErrorKind::InvalidConfig, "r2 > 0 uses the within scatter, which needs class labels");
  }

  RdaModel model;
  model.config = cfg;
  model.mean = sample_mean(x);

  Matrix p;
  if (cfg.r1 > 0.0) {
    const KernelSpec label_kernel = resolve_label_kernel(cfg.label_kernel, labels);
    model.config.label_kernel = label_kernel;
    p = build_P(label_gram(label_kernel, labels, labels), cfg.r1);
  } else {
    p = Matrix::Identity(n, n);
  }
  const Matrix r1 = build_R1(x, p);

  Matrix r2 = Matrix::Identity(d, d);
  if (cfg.r2 > 0.0) r2 = build_R2(within_scatter(x, partition_labels(labels)), cfg.r2);
  if (cfg.robust) r2 = robustify(r2, cfg.reg);

  const EigPair eig = generalized_eig(r1, r2, cfg.reg);
  model.spectrum = eig.values;
  model.regularization = eig.shift;
  model.valid_count = static_cast<std::size_t>(count_valid(eig.values, cfg.valid_eig_threshold));

  const Eigen::Index cap = std::min(d, n - 1);
  Eigen::Index p_dims = 0;
  if (cfg.dims) {
    p_dims = *cfg.dims;
    if (p_dims > cap) {
      model.warnings.push_back("requested " + std::to_string(p_dims) +
                               " dimensions; capped at min(d, n-1) = " + std::to_string(cap));
      p_dims = cap;
    }
  } else {
    p_dims = std::min(cap, choose_dimensionality(eig.values.head(cap).cwiseMax(0.0), cfg.auto_ratio));
  }
  if (p_dims > static_cast<Eigen::Index>(model.valid_count)) {
    model.warnings.push_back("basis includes " +
                             std::to_string(p_dims - static_cast<Eigen::Index>(model.valid_count)) +
                             " direction(s) with invalid (near-zero) eigenvalues");
  }

  model.basis = eig.vectors.leftCols(p_dims);
  model.eigvals = eig.values.head(p_dims);

  const Matrix r2_used = r2 + eig.shift * Matrix::Identity(d, d);
  const double scale = r1.norm();
  const Matrix resid = r1 * model.basis - r2_used * model.basis * model.eigvals.asDiagonal();
  model.residual = scale > 0.0 ? resid.norm() / scale : resid.norm();
  return model;
}

namespace {

void check_input_dim(const RdaModel& model, const DataMatrix& x) {
  if (x.rows() != model.input_dim()) {
    fail(ErrorKind::InvalidDimension, "model expects " + std::to_string(model.input_dim()) +
                                          " features, data has " + std::to_string(x.rows()));
  }
}

}  // namespace

Matrix project(const RdaModel& model, const DataMatrix& x) {
  check_input_dim(model, x);
  return model.basis.transpose() * (x.colwise() - model.mean);
}

Matrix reconstruct(const RdaModel& model, const DataMatrix& x) {
  check_input_dim(model, x);
  Matrix out = model.basis * project(model, x);
  out.colwise() += model.mean;
  return out;
}

double supervision_level(double r1, double r2) {
  check_roweis_factor(r1, "r1");
  check_roweis_factor(r2, "r2");
  return 0.5 * (r1 + r2);
}

Eigen::Index choose_dimensionality(const Vector& eigvals, double ratio_threshold) {
  if (eigvals.size() == 0) fail(ErrorKind::InvalidInput, "empty spectrum");
  if ((eigvals.array() < 0.0).any()) {
    fail(ErrorKind::InvalidInput, "choose_dimensionality needs non-negative eigenvalues");
  }
  const double total = eigvals.sum();
  if (!(total > 0.0)) fail(ErrorKind::Numerical, "spectrum is identically zero");
  Eigen::Index count = 0;
  for (Eigen::Index j = 0; j < eigvals.size(); ++j) {
    if (eigvals(j) / total >= ratio_threshold * (1.0 - 1e-12)) ++count;
  }
  return std::max<Eigen::Index>(count, 1);
}

}  // namespace rda
