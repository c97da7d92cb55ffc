#include "rda/experiments.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "rda/core.hpp"
#include "rda/csv.hpp"
#include "rda/error.hpp"
#include "rda/kernel_rda.hpp"
#include "rda/random.hpp"

namespace rda {
namespace {

std::string factor_text(double r) { return format_double(r); }

}  // namespace

double regression_trial(const RegressionSetup& setup, std::uint64_t seed) {
  const Dataset ds = gen_regression_benchmark(setup.benchmark, setup.n, derive_seed(seed, 0));
  const Split split = train_test_split(ds, setup.train_fraction, derive_seed(seed, 1));

  RoweisConfig cfg;
  cfg.r1 = setup.r1;
  cfg.r2 = setup.r2;
  cfg.dims = setup.dims;
  cfg.label_kernel = KernelSpec::rbf();

  Matrix train_emb;
  Matrix test_emb;
  if (setup.kernel) {
    const auto model = fit_direct(split.train.x, split.train.y, cfg, KernelSpec::rbf());
    train_emb = training_embedding(model);
    test_emb = project_kernel(model, split.test.x);
  } else {
    const auto model = fit(split.train.x, split.train.y, cfg);
    train_emb = project(model, split.train.x);
    test_emb = project(model, split.test.x);
  }
  return linear_regression_rmse(train_emb, split.train.y, test_emb, split.test.y).value;
}

std::vector<RegressionCell> run_regression_table(const RegressionTableOptions& opts) {
  const auto seeds = seed_range(opts.first_seed, opts.repetitions);
  std::vector<RegressionCell> cells;
  for (bool kernel : {false, true}) {
    if (kernel && !opts.include_kernel) continue;
    for (double r1 : opts.r1_values) {
      for (int b : opts.benchmarks) {
        RegressionSetup setup;
        setup.benchmark = b;
        setup.r1 = r1;
        setup.kernel = kernel;
        setup.n = opts.n;
        setup.train_fraction = opts.train_fraction;
        setup.dims = opts.dims;
        RegressionCell cell;
        cell.method = kernel ? "KRDA" : "RDA";
        cell.r1 = r1;
        cell.benchmark = b;
        cell.report = repeat_experiment([&](std::uint64_t s) { return regression_trial(setup, s); }, seeds,
                                        Metric::Rmse);
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

TextTable regression_table(const std::vector<RegressionCell>& cells) {
  std::vector<int> benchmarks;
  std::vector<std::pair<std::string, double>> rows;
  std::map<std::pair<std::pair<std::string, double>, int>, const RegressionCell*> lookup;
  for (const auto& c : cells) {
    if (std::find(benchmarks.begin(), benchmarks.end(), c.benchmark) == benchmarks.end()) {
      benchmarks.push_back(c.benchmark);
    }
    const auto key = std::make_pair(c.method, c.r1);
    if (std::find(rows.begin(), rows.end(), key) == rows.end()) rows.push_back(key);
    lookup[{key, c.benchmark}] = &c;
  }
  std::vector<std::string> header{"method", "r1", "r2"};
  for (int b : benchmarks) header.push_back("benchmark " + std::to_string(b));
  TextTable table(header);
  for (const auto& key : rows) {
    std::vector<std::string> row{key.first, factor_text(key.second), "0"};
    for (int b : benchmarks) {
      const auto it = lookup.find({key, b});
      row.push_back(it == lookup.end() ? "-"
                                       : fixed(it->second->report.value, 3) + " +- " +
                                             fixed(it->second->report.std, 3));
    }
    table.add_row(std::move(row));
  }
  return table;
}

TextTable regression_long_table(const std::vector<RegressionCell>& cells) {
  TextTable table({"method", "r1", "r2", "benchmark", "mean", "std", "repetitions"});
  for (const auto& c : cells) {
    table.add_row({c.method, factor_text(c.r1), factor_text(c.r2), std::to_string(c.benchmark),
                   fixed(c.report.value, 6), fixed(c.report.std, 6),
                   std::to_string(c.report.per_seed_values.size())});
  }
  return table;
}

std::string to_string(SeparationMethod method) {
  switch (method) {
    case SeparationMethod::KernelDsda:
      return "kernel-dsda";
    case SeparationMethod::KernelFda:
      return "kernel-fda";
    case SeparationMethod::PrimalPca:
      return "pca";
  }
  return "?";
}

Dataset make_toy(const std::string& name, Eigen::Index n, std::uint64_t seed) {
  if (name == "xor") return gen_xor(n, seed);
  if (name == "rings") return gen_rings(n, seed);
  fail(ErrorKind::InvalidConfig, "unknown toy dataset '" + name + "'");
}

double separation_error(const Dataset& ds, SeparationMethod method, const SeparationOptions& opts) {
  const Split split = train_test_split(ds, opts.train_fraction, opts.split_seed);
  RoweisConfig cfg;
  cfg.dims = opts.dims;
  Matrix train_emb;
  Matrix test_emb;
  if (method == SeparationMethod::PrimalPca) {
    const auto model = fit(split.train.x, split.train.y, cfg);
    train_emb = project(model, split.train.x);
    test_emb = project(model, split.test.x);
  } else {
    cfg.r1 = method == SeparationMethod::KernelDsda ? 1.0 : 0.0;
    cfg.r2 = 1.0;
    const auto model = fit_direct(split.train.x, split.train.y, cfg, KernelSpec::rbf());
    train_emb = training_embedding(model);
    test_emb = project_kernel(model, split.test.x);
  }
  return knn_classify(train_emb, split.train.y, test_emb, split.test.y, 1).value;
}

std::vector<SeparationResult> run_separation(const SeparationOptions& opts) {
  std::vector<SeparationResult> out;
  for (const std::string name : {"xor", "rings"}) {
    const Dataset ds = make_toy(name, opts.n, opts.data_seed);
    for (auto method : {SeparationMethod::KernelDsda, SeparationMethod::KernelFda, SeparationMethod::PrimalPca}) {
      out.push_back({name, method, separation_error(ds, method, opts)});
    }
  }
  return out;
}

std::vector<EmbeddingPanel> embedding_panels(const std::string& dataset, const SeparationOptions& opts,
                                             Eigen::Index dims) {
  const Dataset ds = make_toy(dataset, opts.n, opts.data_seed);
  const Split split = train_test_split(ds, opts.train_fraction, opts.split_seed);
  std::vector<EmbeddingPanel> panels;
  for (double r2 : {0.0, 0.5, 1.0}) {
    for (double r1 : {0.0, 0.5, 1.0}) {
      RoweisConfig cfg;
      cfg.r1 = r1;
      cfg.r2 = r2;
      cfg.dims = dims;
      const auto model = fit_direct(split.train.x, split.train.y, cfg, KernelSpec::rbf());
      EmbeddingPanel panel;
      panel.dataset = dataset;
      panel.r1 = r1;
      panel.r2 = r2;
      panel.train_emb = training_embedding(model);
      panel.test_emb = project_kernel(model, split.test.x);
      panel.split = split;
      panel.warnings = model.warnings;
      panels.push_back(std::move(panel));
    }
  }
  return panels;
}

std::string panel_name(const EmbeddingPanel& panel) {
  return panel.dataset + "_r1-" + factor_text(panel.r1) + "_r2-" + factor_text(panel.r2);
}

}  // namespace rda
