#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rda/types.hpp"

namespace rda {

enum class Metric { ErrorRate, Rmse };

std::string to_string(Metric metric);

struct EvalReport {
  Metric metric = Metric::ErrorRate;
  double value = 0.0;  // mean over per_seed_values
  double std = 0.0;    // population std over per_seed_values
  std::vector<double> per_seed_values;
  std::vector<std::uint64_t> seeds;

  static EvalReport single(Metric metric, double value);
};

// Euclidean k-NN with majority vote; ties in distance go to the smaller
// training index, ties in the vote to the class of the nearest voter.
std::vector<double> knn_predict(const Matrix& train_emb, const std::vector<double>& train_y,
                                const Matrix& test_emb, int k = 1);
EvalReport knn_classify(const Matrix& train_emb, const LabelVector& train_y, const Matrix& test_emb,
                        const LabelVector& test_y, int k = 1);

struct LinearFit {
  Vector weights;  // p
  double intercept = 0.0;
  bool ridge = false;

  Vector predict(const Matrix& emb) const;
};

// Least squares with intercept; ridge 1e-8 when the design is rank deficient.
LinearFit fit_linear(const Matrix& train_emb, const std::vector<double>& train_y);
double rmse(const Vector& predicted, const std::vector<double>& target);
EvalReport linear_regression_rmse(const Matrix& train_emb, const LabelVector& train_y,
                                  const Matrix& test_emb, const LabelVector& test_y);

// Runs `trial` once per seed and aggregates.
EvalReport repeat_experiment(const std::function<double(std::uint64_t)>& trial,
                             const std::vector<std::uint64_t>& seeds, Metric metric);
std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count);

// Plain-text table with right-aligned columns.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> row);
  void print(std::ostream& out) const;
  void write_csv(std::ostream& out) const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string fixed(double v, int digits);

}  // namespace rda
