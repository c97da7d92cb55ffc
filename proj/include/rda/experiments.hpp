#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rda/datasets.hpp"
#include "rda/eval.hpp"

namespace rda {

// Regression benchmark runs: fit on the training part of one sample, keep
// the top `dims` features, regress linearly, report test RMSE.
struct RegressionSetup {
  int benchmark = 1;
  double r1 = 0.0;
  double r2 = 0.0;
  bool kernel = false;  // kernel RDA (RBF data and label kernels) instead of RDA
  Eigen::Index n = 100;
  double train_fraction = 0.7;
  Eigen::Index dims = 2;
};

double regression_trial(const RegressionSetup& setup, std::uint64_t seed);

struct RegressionTableOptions {
  std::size_t repetitions = 50;
  std::uint64_t first_seed = 1;
  Eigen::Index n = 100;
  double train_fraction = 0.7;
  Eigen::Index dims = 2;
  std::vector<double> r1_values{0.0, 0.5, 1.0};
  std::vector<int> benchmarks{1, 2, 3};
  bool include_kernel = true;
};

struct RegressionCell {
  std::string method;  // "RDA" or "KRDA"
  double r1 = 0.0;
  double r2 = 0.0;
  int benchmark = 1;
  EvalReport report;
};

std::vector<RegressionCell> run_regression_table(const RegressionTableOptions& opts);
// Methods and r1 down the side, benchmarks across, "mean +- std" cells.
TextTable regression_table(const std::vector<RegressionCell>& cells);
// Long format: method, r1, r2, benchmark, mean, std, repetitions.
TextTable regression_long_table(const std::vector<RegressionCell>& cells);

enum class SeparationMethod { KernelDsda, KernelFda, PrimalPca };
std::string to_string(SeparationMethod method);

struct SeparationOptions {
  Eigen::Index n = 400;
  double train_fraction = 0.7;
  Eigen::Index dims = 1;
  std::uint64_t data_seed = 7;
  std::uint64_t split_seed = 7;
};

struct SeparationResult {
  std::string dataset;  // "xor" or "rings"
  SeparationMethod method = SeparationMethod::PrimalPca;
  double error = 0.0;
};

Dataset make_toy(const std::string& name, Eigen::Index n, std::uint64_t seed);
double separation_error(const Dataset& ds, SeparationMethod method, const SeparationOptions& opts);
std::vector<SeparationResult> run_separation(const SeparationOptions& opts);

// One embedding per (r1, r2) in {0, 0.5, 1}^2 from kernel RDA with an RBF
// kernel, for the train and test parts of a toy dataset.
struct EmbeddingPanel {
  std::string dataset;
  double r1 = 0.0;
  double r2 = 0.0;
  Matrix train_emb;
  Matrix test_emb;
  Split split;
  std::vector<std::string> warnings;
};

std::vector<EmbeddingPanel> embedding_panels(const std::string& dataset, const SeparationOptions& opts,
                                             Eigen::Index dims = 2);
std::string panel_name(const EmbeddingPanel& panel);

}  // namespace rda
