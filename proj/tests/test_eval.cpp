#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rda/error.hpp"
#include "rda/eval.hpp"

using namespace rda;

namespace {

Matrix row(std::initializer_list<double> v) {
  Matrix m(1, static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(0, i++) = x;
  return m;
}

}  // namespace

TEST(Knn, HandCase) {
  // A = 0, B = 1
  EXPECT_EQ(knn_predict(row({0.0, 1.0}), {0, 1}, row({0.9})), std::vector<double>{1});
  EXPECT_EQ(knn_predict(row({0.0, 1.0}), {0, 1}, row({0.2})), std::vector<double>{0});
}

TEST(Knn, CoincidentPointTakesItsLabel) {
  Rng rng(1);
  const Matrix train = oracle::random_matrix(3, 10, rng);
  std::vector<double> y(10);
  std::iota(y.begin(), y.end(), 0.0);
  EXPECT_EQ(knn_predict(train, y, train), y);
}

TEST(Knn, TiesGoToSmallerIndex) {
  EXPECT_EQ(knn_predict(row({-1.0, 1.0}), {5, 7}, row({0.0})), std::vector<double>{5});
  EXPECT_EQ(knn_predict(row({1.0, -1.0}), {5, 7}, row({0.0})), std::vector<double>{5});
}

TEST(Knn, SeparatedEmbeddingHasZeroError) {
  const auto r = knn_classify(row({-3, -2, -1, 1, 2, 3}), LabelVector::categorical({0, 0, 0, 1, 1, 1}),
                              row({-2.5, -0.1, 0.4, 5}), LabelVector::categorical({0, 0, 1, 1}));
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.metric, Metric::ErrorRate);
}

TEST(Knn, ErrorRateIsMisclassifiedFraction) {
  const auto r = knn_classify(row({0, 1}), LabelVector::categorical({0, 1}), row({0.1, 0.2, 0.8, 0.9}),
                              LabelVector::categorical({0, 1, 1, 0}));
  EXPECT_DOUBLE_EQ(r.value, 0.5);
}

TEST(Knn, MajorityVote) {
  EXPECT_EQ(knn_predict(row({0.0, 0.1, 0.2, 5.0}), {1, 2, 2, 1}, row({0.0}), 3), std::vector<double>{2});
}

TEST(Knn, PermutationInvariantWithoutTies) {
  Rng rng(2);
  const Matrix train = oracle::random_matrix(2, 12, rng);
  const auto y = oracle::random_classes(12, 3, rng);
  const Matrix test = oracle::random_matrix(2, 8, rng);
  std::vector<Eigen::Index> perm(12);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  Matrix train_p(2, 12);
  std::vector<double> y_p(12);
  for (Eigen::Index i = 0; i < 12; ++i) {
    train_p.col(i) = train.col(perm[static_cast<std::size_t>(i)]);
    y_p[static_cast<std::size_t>(i)] = y.values[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
  }
  EXPECT_EQ(knn_predict(train, y.values, test), knn_predict(train_p, y_p, test));
}

TEST(Knn, Errors) {
  EXPECT_THROW(knn_predict(Matrix(1, 0), {}, row({0.0})), Error);
  EXPECT_THROW(knn_predict(row({0.0}), {0}, row({0.0}), 0), Error);
  EXPECT_THROW(knn_predict(row({0.0}), {0}, row({0.0}), 2), Error);
  EXPECT_THROW(knn_predict(row({0.0}), {0}, Matrix::Zero(2, 1)), Error);
}

TEST(LinearRegression, ClosedFormLine) {
  const LinearFit f = fit_linear(row({0, 1, 2, 4}), {1, 3, 5, 9});
  EXPECT_NEAR(f.predict(row({3}))(0), 7.0, 1e-12);
  EXPECT_NEAR(f.intercept, 1.0, 1e-12);
  EXPECT_NEAR(f.weights(0), 2.0, 1e-12);
  EXPECT_FALSE(f.ridge);
}

TEST(LinearRegression, ExactlyLinearTargets) {
  Rng rng(3);
  const Matrix train = oracle::random_matrix(2, 20, rng);
  const Matrix test = oracle::random_matrix(2, 5, rng);
  auto target = [](const Matrix& e) {
    std::vector<double> y(static_cast<std::size_t>(e.cols()));
    for (Eigen::Index i = 0; i < e.cols(); ++i) y[static_cast<std::size_t>(i)] = 0.5 - 2 * e(0, i) + 3 * e(1, i);
    return LabelVector::regression(y);
  };
  const auto r = linear_regression_rmse(train, target(train), test, target(test));
  EXPECT_LT(r.value, 1e-10);
  EXPECT_EQ(r.metric, Metric::Rmse);
}

TEST(LinearRegression, ConstantTargets) {
  Rng rng(4);
  const Matrix train = oracle::random_matrix(2, 10, rng);
  const auto y = LabelVector::regression(std::vector<double>(10, 4.2));
  const auto r = linear_regression_rmse(train, y, oracle::random_matrix(2, 3, rng),
                                        LabelVector::regression({4.2, 4.2, 4.2}));
  EXPECT_LT(r.value, 1e-10);
}

TEST(LinearRegression, NoWorseThanMeanOnTrain) {
  Rng rng(5);
  const Matrix train = oracle::random_matrix(2, 30, rng);
  std::vector<double> y(30);
  for (auto& v : y) v = rng.normal();
  const LinearFit f = fit_linear(train, y);
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / 30.0;
  EXPECT_LE(rmse(f.predict(train), y), rmse(Vector::Constant(30, mean), y) + 1e-12);
}

TEST(LinearRegression, RankDeficientFallsBackToRidge) {
  Matrix train(2, 3);
  train << 1, 2, 3, 2, 4, 6;
  const LinearFit f = fit_linear(train, {1, 2, 3});
  EXPECT_TRUE(f.ridge);
  EXPECT_NEAR(f.predict(train)(1), 2.0, 1e-6);
}

TEST(Rmse, Value) {
  Vector p(2);
  p << 1, 3;
  EXPECT_DOUBLE_EQ(rmse(p, {0, 0}), std::sqrt(5.0));
}

TEST(Repeat, MeanAndPopulationStd) {
  const auto r = repeat_experiment([](std::uint64_t s) { return static_cast<double>(s); }, {1, 2, 3, 4},
                                   Metric::Rmse);
  EXPECT_DOUBLE_EQ(r.value, 2.5);
  EXPECT_DOUBLE_EQ(r.std, std::sqrt(1.25));
  EXPECT_EQ(r.per_seed_values, (std::vector<double>{1, 2, 3, 4}));
  EXPECT_EQ(r.seeds, (std::vector<std::uint64_t>{1, 2, 3, 4}));
}

TEST(Repeat, SingleRepetitionHasZeroStd) {
  const auto r = repeat_experiment([](std::uint64_t) { return 0.3; }, {9}, Metric::ErrorRate);
  EXPECT_EQ(r.std, 0.0);
  EXPECT_EQ(r.value, 0.3);
}

TEST(Repeat, IdenticalSeedsGiveIdenticalValues) {
  auto trial = [](std::uint64_t s) {
    Rng rng(s);
    return rng.normal();
  };
  const auto r = repeat_experiment(trial, {5, 5, 5}, Metric::Rmse);
  EXPECT_EQ(r.per_seed_values[0], r.per_seed_values[1]);
  EXPECT_EQ(r.per_seed_values[1], r.per_seed_values[2]);
  EXPECT_EQ(r.std, 0.0);
}

TEST(Repeat, MeanIsArithmeticMean) {
  const auto seeds = seed_range(10, 7);
  ASSERT_EQ(seeds.size(), 7u);
  EXPECT_EQ(seeds.front(), 10u);
  auto trial = [](std::uint64_t s) { return 1.0 / static_cast<double>(s); };
  const auto r = repeat_experiment(trial, seeds, Metric::Rmse);
  double sum = 0.0;
  for (double v : r.per_seed_values) sum += v;
  EXPECT_EQ(r.value, sum / 7.0);
}

TEST(TextTable, AlignedAndCsv) {
  TextTable t({"name", "value"});
  t.add_row({"a", "1.5"});
  t.add_row({"long", "2"});
  std::ostringstream txt;
  t.print(txt);
  EXPECT_NE(txt.str().find("long"), std::string::npos);
  std::ostringstream csv;
  t.write_csv(csv);
  EXPECT_EQ(csv.str(), "name,value\na,1.5\nlong,2\n");
  EXPECT_THROW(t.add_row({"x"}), Error);
  EXPECT_EQ(fixed(0.12345, 3), "0.123");
}
