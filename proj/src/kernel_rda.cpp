#include "rda/kernel_rda.hpp"

#include <algorithm>

#include "rda/error.hpp"
#include "rda/linalg.hpp"

namespace rda {

std::string to_string(KernelVariant variant) {
  switch (variant) {
    case KernelVariant::Direct: return "kernel";
    case KernelVariant::TrickPca: return "kernel-pca";
    case KernelVariant::TrickSpca: return "kernel-spca";
  }
  return "kernel";
}

KernelVariant parse_kernel_variant(const std::string& name) {
  if (name == "kernel" || name == "direct") return KernelVariant::Direct;
  if (name == "kernel-pca") return KernelVariant::TrickPca;
  if (name == "kernel-spca") return KernelVariant::TrickSpca;
  fail(ErrorKind::InvalidConfig, "unknown kernel variant '" + name + "'");
}

Eigen::Index KernelRdaModel::dims() const {
  return variant == KernelVariant::Direct ? theta.cols() : sigma.size();
}

Matrix build_M(const Matrix& k_x, const Matrix& p) {
  if (k_x.rows() != k_x.cols() || p.rows() != k_x.rows() || p.cols() != k_x.cols()) {
    fail(ErrorKind::InvalidDimension, "build_M: K_x and P must both be n x n");
  }
  // K_x H P H K_x with the centering applied to K_x's columns.
  const Matrix centered = k_x.rowwise() - k_x.colwise().mean();  // H K_x
  return symmetrized(centered.transpose() * p * centered);
}

Matrix build_N(const Matrix& k_x, const ClassPartition& part) {
  if (k_x.rows() != k_x.cols()) fail(ErrorKind::InvalidDimension, "build_N: K_x must be square");
  part.validate(k_x.rows());
  const Eigen::Index n = k_x.rows();
  Matrix out = Matrix::Zero(n, n);
  for (const auto& members : part.index_sets) {
    const auto nj = static_cast<Eigen::Index>(members.size());
    Matrix k_j(n, nj);
    for (Eigen::Index c = 0; c < nj; ++c) k_j.col(c) = k_x.col(members[static_cast<std::size_t>(c)]);
    // K_j H_j K_j^T = (K_j H_j)(K_j H_j)^T since H_j is idempotent.
    const Matrix centered = k_j.colwise() - k_j.rowwise().mean();
    out.noalias() += centered * centered.transpose();
  }
  return symmetrized(out);
}

Matrix build_L(const Matrix& n_matrix, const Matrix& k_x, double r2) {
  check_roweis_factor(r2, "r2");
  if (n_matrix.rows() != k_x.rows() || n_matrix.cols() != k_x.cols() || k_x.rows() != k_x.cols()) {
    fail(ErrorKind::InvalidDimension, "build_L: N and K_x must both be n x n");
  }
  return symmetrized(r2 * n_matrix + (1.0 - r2) * k_x);
}

Eigen::Index kernel_dimension_bound(Eigen::Index n, std::size_t classes, double r2) {
  if (r2 == 1.0) return std::max<Eigen::Index>(std::min<Eigen::Index>(n, static_cast<Eigen::Index>(classes)) - 1, 0);
  return n - 1;
}

namespace {

void check_kernel_input(const DataMatrix& x) {
  if (x.cols() < 2) fail(ErrorKind::InvalidInput, "kernel fit needs at least two samples");
  if (!x.allFinite()) fail(ErrorKind::InvalidInput, "data contains NaN or Inf");
}

void store_train_stats(KernelRdaModel& model, const Matrix& k_x) {
  model.train_row_means = k_x.rowwise().mean();
  model.train_grand_mean = k_x.mean();
}

Eigen::Index pick_dims(const std::optional<Eigen::Index>& requested, const Vector& spectrum,
                       Eigen::Index available, double ratio, std::vector<std::string>& warnings,
                       const std::string& bound_name) {
  if (requested && *requested < 1) fail(ErrorKind::InvalidConfig, "target dimensionality must be >= 1");
  if (available < 1) fail(ErrorKind::Numerical, "no positive eigenvalues in the kernel problem");
  if (requested) {
    if (*requested > available) {
      warnings.push_back("requested " + std::to_string(*requested) + " dimensions; truncated to " +
                         std::to_string(available) + " (" + bound_name + ")");
      return available;
    }
    return *requested;
  }
  return std::min(available, choose_dimensionality(spectrum.head(available).cwiseMax(0.0), ratio));
}

Matrix centered_test_kernel(const KernelRdaModel& model, const DataMatrix& x) {
  const Matrix k_t = gram(model.kernel, model.train_x, x);
  Matrix out = k_t;
  out.rowwise() -= k_t.colwise().mean();
  out.colwise() -= model.train_row_means;
  out.array() += model.train_grand_mean;
  return out;
}

}  // namespace

KernelRdaModel fit_direct(const DataMatrix& x, const LabelVector& labels, const RoweisConfig& cfg,
                          const KernelSpec& kernel) {
  cfg.validate();
  check_kernel_input(x);
  const Eigen::Index n = x.cols();
  check_labels(labels, n, cfg.uses_labels());
  if (cfg.r2 > 0.0 && !labels.is_categorical()) {
    fail(ErrorKind::InvalidConfig, "r2 > 0 uses the within scatter, which needs class labels");
  }

  KernelRdaModel model;
  model.variant = KernelVariant::Direct;
  model.kernel = resolve(kernel, x);
  model.config = cfg;
  model.train_x = x;

  const Matrix k_x = gram(model.kernel, x, x);
  store_train_stats(model, k_x);

  Matrix p = Matrix::Identity(n, n);
  if (cfg.r1 > 0.0) {
    const KernelSpec label_kernel = resolve_label_kernel(cfg.label_kernel, labels);
    model.config.label_kernel = label_kernel;
    p = build_P(label_gram(label_kernel, labels, labels), cfg.r1);
  }
  const Matrix m = build_M(k_x, p);
  // M = F F^T with F = K_x Delta^T, Delta^T Delta = HPH
  const Matrix h = centering_matrix(n);
  const Matrix factor = k_x * psd_factor(symmetrized(h * p * h)).transpose();

  std::size_t classes = 0;
  Matrix l = k_x;
  if (cfg.r2 > 0.0) {
    const ClassPartition part = partition_labels(labels);
    classes = part.num_classes();
    l = build_L(build_N(k_x, part), k_x, cfg.r2);
  }
  if (cfg.robust) l = robustify(l, cfg.reg);

  const EigPair eig = generalized_eig_factored(factor, l, cfg.reg);
  model.spectrum = eig.values;
  model.regularization = eig.shift;
  model.valid_count = static_cast<std::size_t>(count_valid(eig.values, cfg.valid_eig_threshold));

  const Eigen::Index bound = kernel_dimension_bound(n, classes, cfg.r2);
  const auto valid = static_cast<Eigen::Index>(model.valid_count);
  const Eigen::Index p_dims =
      pick_dims(cfg.dims, eig.values, std::min(bound, valid), cfg.auto_ratio, model.warnings,
                valid < bound ? "valid eigenvalue count"
                              : (cfg.r2 == 1.0 ? "min(n, c) - 1 bound" : "n - 1 bound"));

  model.theta = eig.vectors.leftCols(p_dims);
  model.eigvals = eig.values.head(p_dims);

  const Matrix l_used = l + eig.shift * Matrix::Identity(n, n);
  const Matrix resid = m * model.theta - l_used * model.theta * model.eigvals.asDiagonal();
  const double scale = m.norm();
  model.residual = scale > 0.0 ? resid.norm() / scale : resid.norm();
  return model;
}

KernelRdaModel fit_kernel_pca(const DataMatrix& x, const KernelSpec& kernel,
                              std::optional<Eigen::Index> dims) {
  check_kernel_input(x);
  KernelRdaModel model;
  model.variant = KernelVariant::TrickPca;
  model.kernel = resolve(kernel, x);
  model.train_x = x;

  const Matrix k_x = gram(model.kernel, x, x);
  store_train_stats(model, k_x);

  const EigPair eig = symmetric_eig(double_center(k_x));
  model.spectrum = eig.values;
  model.valid_count = eig.count_valid();
  const auto available = static_cast<Eigen::Index>(model.valid_count);
  if (available < 1) fail(ErrorKind::Numerical, "centered kernel has no positive eigenvalues");
  const Eigen::Index p_dims = pick_dims(dims, eig.values, available, model.config.auto_ratio,
                                        model.warnings, "positive eigenvalues");
  model.v = eig.vectors.leftCols(p_dims);
  model.eigvals = eig.values.head(p_dims);
  model.sigma = model.eigvals.cwiseSqrt();
  return model;
}

KernelRdaModel fit_kernel_spca(const DataMatrix& x, const LabelVector& labels,
                               const KernelSpec& kernel_x, const std::optional<KernelSpec>& kernel_y,
                               std::optional<Eigen::Index> dims) {
  check_kernel_input(x);
  check_labels(labels, x.cols(), true);
  KernelRdaModel model;
  model.variant = KernelVariant::TrickSpca;
  model.kernel = resolve(kernel_x, x);
  model.config.r1 = 1.0;
  model.config.label_kernel = resolve_label_kernel(kernel_y, labels);
  model.train_x = x;

  const Matrix k_x = gram(model.kernel, x, x);
  store_train_stats(model, k_x);

  const Matrix k_y = label_gram(*model.config.label_kernel, labels, labels);
  model.upsilon = psd_factor(k_y).transpose();
  const Matrix inner = model.upsilon.transpose() * double_center(k_x) * model.upsilon;
  const EigPair eig = symmetric_eig(symmetrized(inner));
  model.spectrum = eig.values;
  model.valid_count = eig.count_valid();
  const auto available = static_cast<Eigen::Index>(model.valid_count);
  if (available < 1) fail(ErrorKind::Numerical, "kernel SPCA problem has no positive eigenvalues");
  const Eigen::Index p_dims = pick_dims(dims, eig.values, available, model.config.auto_ratio,
                                        model.warnings, "positive eigenvalues");
  model.v = eig.vectors.leftCols(p_dims);
  model.eigvals = eig.values.head(p_dims);
  model.sigma = model.eigvals.cwiseSqrt();
  return model;
}

Matrix project_kernel(const KernelRdaModel& model, const DataMatrix& x) {
  if (x.rows() != model.input_dim()) {
    fail(ErrorKind::InvalidDimension, "model expects " + std::to_string(model.input_dim()) +
                                          " features, data has " + std::to_string(x.rows()));
  }
  switch (model.variant) {
    case KernelVariant::Direct:
      return model.theta.transpose() * gram(model.kernel, model.train_x, x);
    case KernelVariant::TrickPca:
      return model.sigma.cwiseInverse().asDiagonal() *
             (model.v.transpose() * centered_test_kernel(model, x));
    case KernelVariant::TrickSpca:
      return model.sigma.cwiseInverse().asDiagonal() *
             (model.v.transpose() * (model.upsilon.transpose() * centered_test_kernel(model, x)));
  }
  return {};
}

Matrix training_embedding(const KernelRdaModel& model) {
  switch (model.variant) {
    case KernelVariant::Direct:
      return model.theta.transpose() * gram(model.kernel, model.train_x, model.train_x);
    case KernelVariant::TrickPca:
      return model.sigma.asDiagonal() * model.v.transpose();
    case KernelVariant::TrickSpca: {
      const Matrix centered = double_center(gram(model.kernel, model.train_x, model.train_x));
      return model.sigma.cwiseInverse().asDiagonal() *
             (model.v.transpose() * (model.upsilon.transpose() * centered));
    }
  }
  return {};
}

}  // namespace rda
