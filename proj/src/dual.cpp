#include "rda/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rda/core.hpp"
#include "rda/error.hpp"
#include "rda/linalg.hpp"
#include "rda/scatter.hpp"

namespace rda {

std::string to_string(DualRoute route) {
  switch (route) {
    case DualRoute::Auto: return "auto";
    case DualRoute::GramEigen: return "gram-eigen";
    case DualRoute::Svd: return "svd";
  }
  return "auto";
}

DualRoute parse_dual_route(const std::string& name) {
  if (name == "auto") return DualRoute::Auto;
  if (name == "gram-eigen") return DualRoute::GramEigen;
  if (name == "svd") return DualRoute::Svd;
  fail(ErrorKind::InvalidConfig, "unknown dual route '" + name + "'");
}

void DualConfig::validate() const {
  check_roweis_factor(r1, "r1");
  check_roweis_factor(r2, "r2");
  if (r2 != 0.0) fail(ErrorKind::Unsupported, "dual requires r2=0");
  if (dims && *dims < 1) fail(ErrorKind::InvalidConfig, "target dimensionality must be >= 1");
  if (label_kernel) label_kernel->validate();
}

Matrix dual_factor(const DataMatrix& x, const LabelVector& labels, double r1,
                   const std::optional<KernelSpec>& label_kernel) {
  check_roweis_factor(r1, "r1");
  const Eigen::Index d = x.rows();
  const Eigen::Index n = x.cols();
  const Matrix centered = x.colwise() - sample_mean(x);
  if (r1 == 0.0) return centered;

  const KernelSpec spec = resolve_label_kernel(label_kernel, labels);
  const Matrix k_y = label_gram(spec, labels, labels);
  if (r1 == 1.0) {
    // K_y = Upsilon Upsilon^T and Q = X H Upsilon.
    const Matrix upsilon = psd_factor(k_y).transpose();
    return centered * upsilon;
  }

  const Matrix r1_matrix = build_R1(x, build_P(k_y, r1));
  const EigPair eig = symmetric_eig(r1_matrix);
  const Eigen::Index k = std::min(d, n);
  const Vector root = eig.values.head(k).cwiseMax(0.0).cwiseSqrt();
  return eig.vectors.leftCols(k) * root.asDiagonal();
}

DualRdaModel fit_dual(const DataMatrix& x, const LabelVector& labels, const DualConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = x.cols();
  if (n < 2) fail(ErrorKind::InvalidInput, "fit_dual needs at least two samples");
  if (!x.allFinite()) fail(ErrorKind::InvalidInput, "data contains NaN or Inf");
  check_labels(labels, n, cfg.r1 > 0.0);

  DualRdaModel model;
  model.r1 = cfg.r1;
  model.mean = sample_mean(x);
  if (cfg.r1 > 0.0) model.label_kernel = resolve_label_kernel(cfg.label_kernel, labels);
  model.factor_w = dual_factor(x, labels, cfg.r1, model.label_kernel);

  const Matrix& w = model.factor_w;
  DualRoute route = cfg.route;
  if (route == DualRoute::Auto) route = n < x.rows() ? DualRoute::GramEigen : DualRoute::Svd;
  model.route = route;

  Matrix v_all;
  Vector sigma_all;
  if (route == DualRoute::GramEigen) {
    const EigPair eig = symmetric_eig(symmetrized(w.transpose() * w));
    v_all = eig.vectors;
    // Eigenvalues at the rounding level of W^T W would survive the singular
    // cutoff after the square root.
    const double floor = static_cast<double>(w.cols()) * std::numeric_limits<double>::epsilon() *
                         std::max(eig.values(0), 0.0);
    sigma_all = (eig.values.array() > floor).select(eig.values.cwiseMax(0.0).cwiseSqrt(), 0.0);
  } else {
    const SvdFactor svd = incomplete_svd(w, std::min(w.rows(), w.cols()));
    v_all = svd.right;
    sigma_all = svd.singular;
  }

  const double top = sigma_all.size() > 0 ? sigma_all(0) : 0.0;
  if (!(top > 0.0)) fail(ErrorKind::Numerical, "dual factor has no positive singular values");
  const Eigen::Index positive = (sigma_all.array() > cfg.singular_cutoff * top).count();

  Eigen::Index p_dims = 0;
  if (cfg.dims) {
    p_dims = *cfg.dims;
    if (p_dims > positive) {
      model.warnings.push_back("requested " + std::to_string(p_dims) + " dimensions; only " +
                               std::to_string(positive) + " positive singular values");
      p_dims = positive;
    }
  } else {
    const Vector energy = sigma_all.head(positive).array().square();
    p_dims = std::min(positive, choose_dimensionality(energy, cfg.auto_ratio));
  }
  model.v = v_all.leftCols(p_dims);
  model.sigma = sigma_all.head(p_dims);
  return model;
}

namespace {

void check_input_dim(const DualRdaModel& model, const DataMatrix& x) {
  if (x.rows() != model.input_dim()) {
    fail(ErrorKind::InvalidDimension, "model expects " + std::to_string(model.input_dim()) +
                                          " features, data has " + std::to_string(x.rows()));
  }
}

}  // namespace

Matrix project_dual(const DualRdaModel& model, const DataMatrix& x) {
  check_input_dim(model, x);
  const Matrix inner = model.factor_w.transpose() * (x.colwise() - model.mean);
  return model.sigma.cwiseInverse().asDiagonal() * (model.v.transpose() * inner);
}

Matrix reconstruct_dual(const DualRdaModel& model, const DataMatrix& x) {
  check_input_dim(model, x);
  const Matrix inner = model.factor_w.transpose() * (x.colwise() - model.mean);
  const Vector inv_sq = model.sigma.array().square().inverse();
  Matrix out = model.factor_w * (model.v * (inv_sq.asDiagonal() * (model.v.transpose() * inner)));
  out.colwise() += model.mean;
  return out;
}

}  // namespace rda
