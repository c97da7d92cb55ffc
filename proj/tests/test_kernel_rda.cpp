#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rda/core.hpp"
#include "rda/datasets.hpp"
#include "rda/dual.hpp"
#include "rda/error.hpp"
#include "rda/eval.hpp"
#include "rda/kernel_rda.hpp"
#include "rda/scatter.hpp"

using namespace rda;

namespace {

RoweisConfig config(double r1, double r2, std::optional<Eigen::Index> dims = std::nullopt) {
  RoweisConfig cfg;
  cfg.r1 = r1;
  cfg.r2 = r2;
  cfg.dims = dims;
  return cfg;
}

Matrix centered(const Matrix& x) {
  Matrix out = x;
  out.colwise() -= oracle::column_mean(x);
  return out;
}

Matrix center_rows(const Matrix& m) {
  Matrix out = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.row(i).array() -= m.row(i).mean();
  return out;
}

Matrix pairwise(const Matrix& emb) {
  const Eigen::Index n = emb.cols();
  Matrix d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = (emb.col(i) - emb.col(j)).norm();
  return d;
}

// theta^T N theta vs the within scatter of the explicit features along Phi theta.
void check_feature_space_identity(const Matrix& x, const LabelVector& y, const KernelSpec& kernel,
                             const Matrix& phi, Rng& rng) {
  const Matrix n_mat = build_N(gram(kernel, x, x), partition_labels(y));
  const Matrix sw_phi = oracle::loop_within_scatter(phi, y.values);
  for (int t = 0; t < 10; ++t) {
    const Vector theta = oracle::random_matrix(x.cols(), 1, rng).col(0);
    const Vector u = phi * theta;
    const double lhs = theta.dot(n_mat * theta);
    const double rhs = u.dot(sw_phi * u);
    EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}

}  // namespace

TEST(BuildM, IdentityPGivesCenteredKernelProduct) {
  Rng rng(1);
  const Matrix k = oracle::random_psd(6, 6, rng);
  const Matrix h = oracle::centering(6);
  EXPECT_LT(oracle::max_abs(build_M(k, Matrix::Identity(6, 6)) - k * h * k), 1e-12 * k.squaredNorm());
}

TEST(BuildM, IdentityKernelGivesHPH) {
  Rng rng(2);
  const Matrix p = oracle::random_psd(5, 3, rng);
  const Matrix h = oracle::centering(5);
  EXPECT_LT(oracle::max_abs(build_M(Matrix::Identity(5, 5), p) - h * p * h), 1e-12);
}

TEST(BuildM, Symmetric) {
  Rng rng(3);
  const Matrix k = oracle::random_psd(7, 7, rng);
  const Matrix p = oracle::random_psd(7, 4, rng);
  const Matrix m = build_M(k, p);
  EXPECT_LE(oracle::max_abs(m - m.transpose()), 1e-10);
}

TEST(BuildM, ShapeMismatch) {
  EXPECT_THROW(build_M(Matrix::Identity(3, 3), Matrix::Identity(4, 4)), Error);
}

TEST(BuildN, SingletonClassesGiveZero) {
  Rng rng(4);
  const Matrix k = oracle::random_psd(4, 4, rng);
  const auto part = partition_labels(LabelVector::categorical({0, 1, 2, 3}));
  EXPECT_LT(oracle::max_abs(build_N(k, part)), 1e-14);
}

TEST(BuildN, SingleClassGivesKHK) {
  Rng rng(5);
  const Matrix k = oracle::random_psd(5, 5, rng);
  const auto part = partition_labels(LabelVector::categorical({0, 0, 0, 0, 0}));
  const Matrix h = oracle::centering(5);
  EXPECT_LT(oracle::max_abs(build_N(k, part) - k * h * k), 1e-12 * k.squaredNorm());
}

TEST(BuildN, MatchesPerClassSum) {
  Rng rng(6);
  const Matrix k = oracle::random_psd(9, 9, rng);
  const auto y = oracle::random_classes(9, 3, rng);
  Matrix expected = Matrix::Zero(9, 9);
  for (const auto& [label, idx] : oracle::groups(y.values)) {
    Matrix kj(9, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) kj.col(static_cast<Eigen::Index>(c)) = k.col(idx[c]);
    expected += kj * oracle::centering(kj.cols()) * kj.transpose();
  }
  EXPECT_LT(oracle::max_abs(build_N(k, partition_labels(y)) - expected), 1e-12 * k.squaredNorm());
}

TEST(WithinScatterFeatureSpace, LinearKernel) {
  Rng rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    const Matrix x = oracle::random_matrix(3, 10, rng);
    const auto y = oracle::random_classes(10, 2, rng);
    check_feature_space_identity(x, y, KernelSpec::linear(), x, rng);
  }
}

TEST(WithinScatterFeatureSpace, PolynomialKernels) {
  Rng rng(8);
  for (int degree = 1; degree <= 3; ++degree) {
    for (int d = 1; d <= 3; ++d) {
      const Matrix x = oracle::random_matrix(d, 8, rng);
      const auto y = oracle::random_classes(8, 2, rng);
      const double offset = 1.0;
      check_feature_space_identity(x, y, KernelSpec::polynomial(degree, offset), oracle::poly_features(x, degree, offset),
                              rng);
    }
  }
}

TEST(WithinScatterFeatureSpace, ExplicitFeatureMapReproducesKernel) {
  Rng rng(9);
  const Matrix x = oracle::random_matrix(2, 6, rng);
  const Matrix phi = oracle::poly_features(x, 2, 1.0);
  EXPECT_LT(oracle::max_abs(phi.transpose() * phi - gram(KernelSpec::polynomial(2, 1.0), x, x)), 1e-12);
}

TEST(BuildL, Corners) {
  Rng rng(10);
  const Matrix k = oracle::random_psd(5, 5, rng);
  const Matrix n = oracle::random_psd(5, 3, rng);
  EXPECT_LT(oracle::max_abs(build_L(n, k, 0.0) - k), 1e-14);
  EXPECT_LT(oracle::max_abs(build_L(n, k, 1.0) - n), 1e-14);
  EXPECT_LT(oracle::max_abs(build_L(Matrix::Zero(5, 5), k, 0.5) - 0.5 * k), 1e-14);
  EXPECT_THROW(build_L(n, k, 1.5), Error);
}

TEST(FitDirect, LinearPcaMatchesPrimal) {
  Rng rng(11);
  const Matrix x = centered(oracle::random_matrix(3, 20, rng));
  const auto k = fit_direct(x, {}, config(0, 0, 3), KernelSpec::linear());
  RoweisConfig pc = config(0, 0, 3);
  const Matrix a = oracle::normalize_rows(project(fit(x, {}, pc), x));
  const Matrix b = oracle::normalize_rows(training_embedding(k));
  EXPECT_LT(oracle::max_abs(oracle::align_rows(a, b) - a), 1e-6);
}

TEST(FitDirect, DsdaOnRingsHasOneValidEigenvalue) {
  const Dataset ds = gen_rings(200, 3);
  const auto m = fit_direct(ds.x, ds.y, config(1, 1), KernelSpec::rbf());
  EXPECT_EQ(m.valid_count, 1u);
  EXPECT_EQ(m.dims(), 1);
}

TEST(FitDirect, WithinScatterConstraintTruncatesToClassBound) {
  const Dataset ds = gen_rings(200, 4);
  for (double r1 : {0.0, 0.5, 1.0}) {
    const auto m = fit_direct(ds.x, ds.y, config(r1, 1, 5), KernelSpec::rbf());
    EXPECT_EQ(m.dims(), 1) << r1;
    EXPECT_FALSE(m.warnings.empty()) << r1;
  }
}

TEST(FitDirect, ResidualAndNormalization) {
  Rng rng(12);
  const Matrix x = oracle::random_matrix(2, 30, rng);
  const auto y = oracle::random_classes(30, 3, rng);
  for (double r2 : {0.0, 0.5, 1.0}) {
    const auto m = fit_direct(x, y, config(0.5, r2, 2), KernelSpec::rbf(0.7));
    const Matrix k = gram(m.kernel, x, x);
    const Matrix mm = build_M(k, build_P(delta_kernel(y, y), 0.5));
    const Matrix l = build_L(build_N(k, partition_labels(y)), k, r2) +
                     m.regularization * Matrix::Identity(30, 30);
    const Matrix resid = mm * m.theta - l * m.theta * m.eigvals.asDiagonal();
    EXPECT_LE(resid.norm(), 1e-8 * mm.norm()) << r2;
    EXPECT_LE(m.residual, 1e-8) << r2;
    // rounding in Theta^T L' Theta scales with ||L'|| ||Theta||^2
    const double scale = l.norm() * m.theta.colwise().squaredNorm().maxCoeff();
    EXPECT_LT(oracle::max_abs(m.theta.transpose() * l * m.theta - Matrix::Identity(2, 2)), 1e-13 * scale) << r2;
  }
}

TEST(FitDirect, BatchMatchesSinglePointProjection) {
  Rng rng(13);
  const Matrix x = oracle::random_matrix(3, 25, rng);
  const auto y = oracle::random_classes(25, 2, rng);
  const auto m = fit_direct(x, y, config(1, 0.5, 1), KernelSpec::rbf());
  const Matrix t = oracle::random_matrix(3, 7, rng);
  const Matrix batch = project_kernel(m, t);
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    EXPECT_LT(oracle::max_abs(project_kernel(m, t.col(j)) - batch.col(j)), 1e-12);
  }
  EXPECT_LT(oracle::max_abs(project_kernel(m, x) - training_embedding(m)), 1e-10);
}

TEST(FitDirect, DuplicateTrainingPointGivesIdenticalColumn) {
  Rng rng(14);
  const Matrix x = oracle::random_matrix(2, 12, rng);
  const auto m = fit_direct(x, {}, config(0, 0, 2), KernelSpec::rbf());
  Matrix t(2, 2);
  t.col(0) = x.col(3);
  t.col(1) = x.col(3);
  const Matrix e = project_kernel(m, t);
  EXPECT_EQ(e.col(0), e.col(1));
}

TEST(FitDirect, DsdaSeparatesXor) {
  const Dataset ds = gen_xor(400, 7);
  const Split sp = train_test_split(ds, 0.7, 7);
  const auto m = fit_direct(sp.train.x, sp.train.y, config(1, 1), KernelSpec::rbf());
  const auto report = knn_classify(training_embedding(m), sp.train.y, project_kernel(m, sp.test.x), sp.test.y);
  EXPECT_LE(report.value, 0.05);
}

TEST(FitDirect, Errors) {
  const Matrix x = Matrix::Random(2, 6);
  const auto y = LabelVector::regression({0.1, 0.5, 0.2, 0.9, 0.3, 0.4});
  try {
    fit_direct(x, y, config(0, 1), KernelSpec::rbf());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
  }
  EXPECT_THROW(fit_direct(Matrix::Random(2, 1), {}, config(0, 0), KernelSpec::rbf()), Error);
  const auto m = fit_direct(x, {}, config(0, 0, 1), KernelSpec::rbf());
  EXPECT_THROW(project_kernel(m, Matrix::Random(3, 2)), Error);
}

TEST(KernelPca, LinearMatchesPrimalPca) {
  Rng rng(15);
  const Matrix x = oracle::random_matrix(3, 15, rng);
  const auto k = fit_kernel_pca(x, KernelSpec::linear(), 3);
  const Matrix a = oracle::normalize_rows(project(fit(x, {}, config(0, 0, 3)), x));
  const Matrix b = oracle::normalize_rows(training_embedding(k));
  EXPECT_LT(oracle::max_abs(oracle::align_rows(a, b) - a), 1e-6);
}

TEST(KernelPca, OutOfSampleOnTrainingSetMatchesTrainingEmbedding) {
  Rng rng(16);
  const Matrix x = oracle::random_matrix(4, 20, rng);
  for (const KernelSpec& kernel : {KernelSpec::linear(), KernelSpec::rbf(), KernelSpec::polynomial(2)}) {
    const auto m = fit_kernel_pca(x, kernel, 3);
    const Matrix train = training_embedding(m);
    EXPECT_LT(oracle::max_abs(project_kernel(m, x) - train), 1e-8 * std::max(1.0, oracle::max_abs(train)));
    EXPECT_LT(oracle::max_abs(train - m.sigma.asDiagonal() * m.v.transpose()), 1e-12);
  }
}

TEST(KernelPca, SingleDirectionHasOnePositiveEigenvalue) {
  Rng rng(17);
  Vector dir(3);
  dir << 1.0, -2.0, 0.5;
  const Matrix x = dir * oracle::random_matrix(1, 10, rng);
  const auto m = fit_kernel_pca(x, KernelSpec::linear());
  EXPECT_EQ(m.valid_count, 1u);
  EXPECT_EQ(m.dims(), 1);
}

TEST(KernelPca, DegenerateKernelFails) {
  const Matrix x = Matrix::Ones(2, 5);
  try {
    fit_kernel_pca(x, KernelSpec::rbf(1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Numerical);
  }
}

TEST(KernelSpca, LinearMatchesDualSpca) {
  Rng rng(18);
  for (auto [d, n] : {std::pair<Eigen::Index, Eigen::Index>{3, 20}, {30, 12}}) {
    const Matrix x = oracle::random_matrix(d, n, rng);
    const auto y = oracle::random_classes(n, 3, rng);
    const auto k = fit_kernel_spca(x, y, KernelSpec::linear(), std::nullopt, 2);
    DualConfig dc;
    dc.r1 = 1.0;
    dc.dims = 2;
    const auto du = fit_dual(x, y, dc);
    const Matrix a = project_dual(du, x);
    const Vector s = oracle::row_signs(a, training_embedding(k));
    EXPECT_LT(oracle::max_abs(s.asDiagonal() * training_embedding(k) - a), 1e-8 * std::max(1.0, oracle::max_abs(a)));
    const Matrix t = oracle::random_matrix(d, 5, rng);
    const Matrix at = project_dual(du, t);
    EXPECT_LT(oracle::max_abs(s.asDiagonal() * project_kernel(k, t) - at), 1e-8 * std::max(1.0, oracle::max_abs(at)));
  }
}

TEST(KernelSpca, DeltaLabelsSeparateClassMeans) {
  const Dataset ds = gen_rings(200, 5);
  const auto m = fit_kernel_spca(ds.x, ds.y, KernelSpec::rbf(), std::nullopt, 1);
  const Matrix e = training_embedding(m);
  double mean[2] = {0, 0};
  double var[2] = {0, 0};
  int count[2] = {0, 0};
  for (Eigen::Index i = 0; i < e.cols(); ++i) {
    const int c = static_cast<int>(ds.y.values[static_cast<std::size_t>(i)]);
    mean[c] += e(0, i);
    ++count[c];
  }
  for (int c = 0; c < 2; ++c) mean[c] /= count[c];
  for (Eigen::Index i = 0; i < e.cols(); ++i) {
    const int c = static_cast<int>(ds.y.values[static_cast<std::size_t>(i)]);
    var[c] += (e(0, i) - mean[c]) * (e(0, i) - mean[c]) / count[c];
  }
  EXPECT_GT(std::abs(mean[0] - mean[1]), 2.0 * (std::sqrt(var[0]) + std::sqrt(var[1])));
}

TEST(KernelSpca, DistinctLabelsReduceToKernelPca) {
  Rng rng(19);
  const Matrix x = oracle::random_matrix(3, 10, rng);
  std::vector<double> ids(10);
  for (int i = 0; i < 10; ++i) ids[static_cast<std::size_t>(i)] = i;
  const auto s = fit_kernel_spca(x, LabelVector::categorical(ids), KernelSpec::rbf(0.5), std::nullopt, 3);
  const auto p = fit_kernel_pca(x, KernelSpec::rbf(0.5), 3);
  const Matrix a = training_embedding(p);
  const Matrix b = training_embedding(s);
  // Sigma^-1 V^T H K H vs Sigma V^T: same rows up to sign
  EXPECT_LT(oracle::max_abs(oracle::align_rows(a, b) - a), 1e-8);
}

TEST(KernelTrick, SpcaMatchesDirectAtSupervisedCorner) {
  Rng rng(20);
  const Matrix x = oracle::random_matrix(2, 24, rng);
  const auto y = oracle::random_classes(24, 3, rng);
  const KernelSpec kernel = KernelSpec::polynomial(2);
  const auto trick = fit_kernel_spca(x, y, kernel, std::nullopt, 2);
  const auto direct = fit_direct(x, y, config(1, 0, 2), kernel);
  const Matrix a = pairwise(oracle::normalize_rows(center_rows(training_embedding(trick))));
  const Matrix b = pairwise(oracle::normalize_rows(center_rows(training_embedding(direct))));
  EXPECT_LT(oracle::max_abs(a - b), 1e-6);
}

TEST(KernelModel, VariantNames) {
  EXPECT_EQ(parse_kernel_variant(to_string(KernelVariant::TrickSpca)), KernelVariant::TrickSpca);
  EXPECT_THROW(parse_kernel_variant("nope"), Error);
}
