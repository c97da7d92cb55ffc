#include "rda/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "rda/error.hpp"

namespace rda {

void KernelSpec::validate() const {
  switch (family) {
    case KernelFamily::Rbf:
      if (gamma && !(*gamma > 0.0)) fail(ErrorKind::InvalidConfig, "rbf gamma must be positive");
      break;
    case KernelFamily::Polynomial:
      if (degree < 1) fail(ErrorKind::InvalidConfig, "polynomial degree must be >= 1");
      break;
    default:
      break;
  }
}

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Linear: return "linear";
    case KernelFamily::Rbf: return "rbf";
    case KernelFamily::Polynomial: return "polynomial";
    case KernelFamily::Delta: return "delta";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(const std::string& name) {
  if (name == "linear") return KernelFamily::Linear;
  if (name == "rbf" || name == "gaussian") return KernelFamily::Rbf;
  if (name == "polynomial" || name == "poly") return KernelFamily::Polynomial;
  if (name == "delta") return KernelFamily::Delta;
  fail(ErrorKind::InvalidConfig, "unknown kernel family '" + name + "'");
}

std::string describe(const KernelSpec& spec) {
  std::ostringstream os;
  os << to_string(spec.family);
  if (spec.family == KernelFamily::Rbf) {
    if (spec.gamma) {
      os << "(gamma=" << *spec.gamma << ")";
    } else {
      os << "(gamma=median)";
    }
  } else if (spec.family == KernelFamily::Polynomial) {
    os << "(degree=" << spec.degree << ", offset=" << spec.offset << ")";
  }
  return os.str();
}

double median_heuristic_gamma(const DataMatrix& x) {
  const Eigen::Index n = x.cols();
  std::vector<double> dist;
  dist.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) dist.push_back((x.col(i) - x.col(j)).norm());
  }
  if (dist.empty()) return 1.0;
  const auto mid = dist.begin() + static_cast<std::ptrdiff_t>(dist.size() / 2);
  std::nth_element(dist.begin(), mid, dist.end());
  double median = *mid;
  if (dist.size() % 2 == 0) {
    const double lower = *std::max_element(dist.begin(), mid);
    median = 0.5 * (median + lower);
  }
  if (!(median > 0.0)) {
    // More than half the pairs coincide; fall back to the mean nonzero distance.
    double sum = 0.0;
    std::size_t count = 0;
    for (double v : dist) {
      if (v > 0.0) {
        sum += v;
        ++count;
      }
    }
    if (count == 0) return 1.0;
    median = sum / static_cast<double>(count);
  }
  return 1.0 / (2.0 * median * median);
}

KernelSpec resolve(const KernelSpec& spec, const DataMatrix& x) {
  spec.validate();
  KernelSpec out = spec;
  if (out.family == KernelFamily::Rbf && !out.gamma) out.gamma = median_heuristic_gamma(x);
  return out;
}

double kernel_value(const KernelSpec& spec, const Eigen::Ref<const Vector>& a,
                    const Eigen::Ref<const Vector>& b) {
  switch (spec.family) {
    case KernelFamily::Linear:
      return a.dot(b);
    case KernelFamily::Rbf:
      return std::exp(-*spec.gamma * (a - b).squaredNorm());
    case KernelFamily::Polynomial:
      return std::pow(a.dot(b) + spec.offset, spec.degree);
    case KernelFamily::Delta:
      return a == b ? 1.0 : 0.0;
  }
  return 0.0;
}

Matrix gram(const KernelSpec& spec, const DataMatrix& a, const DataMatrix& b) {
  spec.validate();
  if (!spec.resolved()) fail(ErrorKind::InvalidConfig, "rbf kernel used before gamma was resolved");
  if (a.rows() != b.rows()) {
    fail(ErrorKind::InvalidDimension, "gram: dimensionality mismatch (" + std::to_string(a.rows()) +
                                          " vs " + std::to_string(b.rows()) + ")");
  }
  Matrix k(a.cols(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.cols(); ++i) k(i, j) = kernel_value(spec, a.col(i), b.col(j));
  }
  return k;
}

Matrix delta_kernel(const LabelVector& y1, const LabelVector& y2) {
  if (!y1.is_categorical() || !y2.is_categorical()) {
    fail(ErrorKind::InvalidLabel, "delta kernel requires categorical labels");
  }
  Matrix k(static_cast<Eigen::Index>(y1.size()), static_cast<Eigen::Index>(y2.size()));
  for (std::size_t i = 0; i < y1.size(); ++i) {
    for (std::size_t j = 0; j < y2.size(); ++j) {
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          y1.values[i] == y2.values[j] ? 1.0 : 0.0;
    }
  }
  return k;
}

DataMatrix labels_as_row(const LabelVector& y) {
  DataMatrix row(1, static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) row(0, static_cast<Eigen::Index>(i)) = y.values[i];
  return row;
}

Matrix label_gram(const KernelSpec& spec, const LabelVector& y1, const LabelVector& y2) {
  if (spec.family == KernelFamily::Delta) return delta_kernel(y1, y2);
  return gram(spec, labels_as_row(y1), labels_as_row(y2));
}

KernelSpec default_label_kernel(const LabelVector& y) {
  if (y.is_categorical()) return KernelSpec::delta();
  return resolve(KernelSpec::rbf(), labels_as_row(y));
}

KernelSpec resolve_label_kernel(const std::optional<KernelSpec>& spec, const LabelVector& y) {
  if (!spec) return default_label_kernel(y);
  if (spec->family == KernelFamily::Delta && !y.is_categorical()) {
    fail(ErrorKind::InvalidLabel, "delta label kernel requires categorical labels");
  }
  return resolve(*spec, labels_as_row(y));
}

Matrix double_center(const Matrix& k) {
  if (k.rows() != k.cols()) {
    fail(ErrorKind::InvalidDimension, "double_center needs a square matrix");
  }
  if (k.size() == 0) return k;
  const Vector row_mean = k.rowwise().mean();
  const Eigen::RowVectorXd col_mean = k.colwise().mean();
  const double grand = k.mean();
  Matrix out = k;
  out.colwise() -= row_mean;
  out.rowwise() -= col_mean;
  out.array() += grand;
  return out;
}

Matrix center_test_kernel(const Matrix& k_train, const Matrix& k_test) {
  if (k_train.rows() != k_train.cols() || k_test.rows() != k_train.rows()) {
    fail(ErrorKind::InvalidDimension, "center_test_kernel: expected n x n training kernel and n x n_t test kernel");
  }
  if (k_train.size() == 0) return k_test;
  // K_t - (1/n) 1 K_t - (1/n) K_x 1 + (1/n^2) 1 K_x 1
  const Eigen::RowVectorXd test_col_mean = k_test.colwise().mean();
  const Vector train_row_mean = k_train.rowwise().mean();
  const double grand = k_train.mean();
  Matrix out = k_test;
  out.rowwise() -= test_col_mean;
  out.colwise() -= train_row_mean;
  out.array() += grand;
  return out;
}

}  // namespace rda
