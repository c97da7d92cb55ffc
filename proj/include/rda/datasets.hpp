#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rda/types.hpp"

namespace rda {

struct Dataset {
  DataMatrix x;  // d x n
  LabelVector y;
  std::uint64_t seed = 0;

  LabelKind kind() const { return y.kind; }
  Eigen::Index size() const { return x.cols(); }
  void validate() const;
};

struct XorOptions {
  // Points with |coordinate| < margin are excluded around both axes.
  double margin = 0.1;
};

struct RingsOptions {
  double inner_radius = 1.0;
  double outer_radius = 3.0;
  double noise = 0.1;  // radial Gaussian noise
};

struct BenchmarkOptions {
  // Multiplies the noise draw; 0 gives the noiseless response.
  double noise_scale = 1.0;
};

// Classes alternate 0, 1, 0, ... so the two classes differ by at most one.
Dataset gen_xor(Eigen::Index n, std::uint64_t seed, const XorOptions& opts = {});
Dataset gen_rings(Eigen::Index n, std::uint64_t seed, const RingsOptions& opts = {});

// Regression benchmarks 1-3; see benchmark_response for the targets.
Dataset gen_regression_benchmark(int id, Eigen::Index n, std::uint64_t seed,
                                 const BenchmarkOptions& opts = {});
Eigen::Index benchmark_dim(int id);
// Target for one sample x given the noise draw eps.
double benchmark_response(int id, const Eigen::Ref<const Vector>& x, double eps);

struct Split {
  Dataset train;
  Dataset test;
  std::vector<Eigen::Index> train_index;
  std::vector<Eigen::Index> test_index;
  bool stratified = false;
  std::vector<std::string> warnings;
};

// Stratified by class for categorical labels (falls back to a plain split,
// with a warning, when a class has fewer than two members).
Split train_test_split(const Dataset& ds, double train_fraction, std::uint64_t seed);

Dataset subset(const Dataset& ds, const std::vector<Eigen::Index>& index);

struct Standardization {
  Vector mean;
  Vector scale;  // population std, 1 for constant features
};

struct Standardized {
  DataMatrix train;
  DataMatrix test;
  Standardization stats;
};

Standardized standardize(const DataMatrix& train, const DataMatrix& test);
DataMatrix apply_standardization(const Standardization& stats, const DataMatrix& x);

}  // namespace rda
