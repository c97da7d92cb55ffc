#include "rda/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "rda/error.hpp"
#include "rda/random.hpp"

namespace rda {

void Dataset::validate() const {
  if (static_cast<Eigen::Index>(y.size()) != x.cols()) {
    fail(ErrorKind::InvalidInput, "dataset has " + std::to_string(x.cols()) + " samples but " +
                                      std::to_string(y.size()) + " labels");
  }
  if (!x.allFinite()) fail(ErrorKind::InvalidInput, "dataset contains NaN or Inf");
  for (double v : y.values) {
    if (!std::isfinite(v)) fail(ErrorKind::InvalidInput, "labels contain NaN or Inf");
  }
}

Dataset gen_xor(Eigen::Index n, std::uint64_t seed, const XorOptions& opts) {
  if (n < 4) fail(ErrorKind::InvalidInput, "xor needs n >= 4");
  if (!(opts.margin >= 0.0 && opts.margin < 1.0)) fail(ErrorKind::InvalidConfig, "xor margin must be in [0, 1)");
  Rng rng(seed);
  Dataset ds;
  ds.seed = seed;
  ds.x.resize(2, n);
  ds.y = LabelVector::categorical(std::vector<double>(static_cast<std::size_t>(n)));
  for (Eigen::Index i = 0; i < n; ++i) {
    const int cls = static_cast<int>(i % 2);
    const double a = rng.uniform(opts.margin, 1.0);
    const double b = rng.uniform(opts.margin, 1.0);
    const double s1 = rng.uniform() < 0.5 ? 1.0 : -1.0;
    const double s2 = cls == 0 ? s1 : -s1;
    ds.x(0, i) = s1 * a;
    ds.x(1, i) = s2 * b;
    ds.y.values[static_cast<std::size_t>(i)] = cls;
  }
  return ds;
}

Dataset gen_rings(Eigen::Index n, std::uint64_t seed, const RingsOptions& opts) {
  if (n < 4) fail(ErrorKind::InvalidInput, "rings needs n >= 4");
  if (!(opts.noise >= 0.0)) fail(ErrorKind::InvalidConfig, "ring noise must be non-negative");
  Rng rng(seed);
  Dataset ds;
  ds.seed = seed;
  ds.x.resize(2, n);
  ds.y = LabelVector::categorical(std::vector<double>(static_cast<std::size_t>(n)));
  for (Eigen::Index i = 0; i < n; ++i) {
    const int cls = static_cast<int>(i % 2);
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double radius = (cls == 0 ? opts.inner_radius : opts.outer_radius) + opts.noise * rng.normal();
    ds.x(0, i) = radius * std::cos(angle);
    ds.x(1, i) = radius * std::sin(angle);
    ds.y.values[static_cast<std::size_t>(i)] = cls;
  }
  return ds;
}

Eigen::Index benchmark_dim(int id) {
  switch (id) {
    case 1:
    case 2: return 4;
    case 3: return 10;
    default: fail(ErrorKind::InvalidConfig, "unknown regression benchmark " + std::to_string(id));
  }
}

double benchmark_response(int id, const Eigen::Ref<const Vector>& x, double eps) {
  if (x.size() != benchmark_dim(id)) fail(ErrorKind::InvalidDimension, "benchmark sample has wrong dimension");
  switch (id) {
    case 1: {
      const double shifted = x(1) + 1.5;
      return x(0) / (0.5 + shifted * shifted) + (1.0 + x(1)) * (1.0 + x(1)) + 0.5 * eps;
    }
    case 2: {
      const double s = std::sin(std::numbers::pi * x(1) + 1.0);
      return s * s + 0.5 * eps;
    }
    case 3:
      return 0.5 * x(0) * x(0) * eps;
    default:
      fail(ErrorKind::InvalidConfig, "unknown regression benchmark " + std::to_string(id));
  }
}

Dataset gen_regression_benchmark(int id, Eigen::Index n, std::uint64_t seed, const BenchmarkOptions& opts) {
  const Eigen::Index d = benchmark_dim(id);
  if (n < 1) fail(ErrorKind::InvalidInput, "benchmark needs n >= 1");
  Rng rng(seed);
  Dataset ds;
  ds.seed = seed;
  ds.x.resize(d, n);
  std::vector<double> targets(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (id == 2) {
      // Uniform on [0,1]^4 minus the corner where every coordinate is <= 0.7.
      Vector sample(d);
      do {
        for (Eigen::Index k = 0; k < d; ++k) sample(k) = rng.uniform();
      } while ((sample.array() <= 0.7).all());
      ds.x.col(i) = sample;
    } else {
      for (Eigen::Index k = 0; k < d; ++k) ds.x(k, i) = rng.normal();
    }
    const double eps = opts.noise_scale * rng.normal();
    targets[static_cast<std::size_t>(i)] = benchmark_response(id, ds.x.col(i), eps);
  }
  ds.y = LabelVector::regression(std::move(targets));
  return ds;
}

Dataset subset(const Dataset& ds, const std::vector<Eigen::Index>& index) {
  Dataset out;
  out.seed = ds.seed;
  out.x.resize(ds.x.rows(), static_cast<Eigen::Index>(index.size()));
  out.y.kind = ds.y.kind;
  out.y.values.reserve(index.size());
  for (std::size_t k = 0; k < index.size(); ++k) {
    out.x.col(static_cast<Eigen::Index>(k)) = ds.x.col(index[k]);
    out.y.values.push_back(ds.y.values[static_cast<std::size_t>(index[k])]);
  }
  return out;
}

Split train_test_split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    fail(ErrorKind::InvalidConfig, "train fraction must lie in (0, 1)");
  }
  ds.validate();
  const Eigen::Index n = ds.size();
  if (n < 2) fail(ErrorKind::InvalidInput, "cannot split fewer than two samples");
  const Eigen::Index n_train =
      std::clamp<Eigen::Index>(std::llround(train_fraction * static_cast<double>(n)), 1, n - 1);

  Split split;
  Rng rng(seed);
  std::vector<Eigen::Index> train;

  std::map<double, std::vector<Eigen::Index>> groups;
  if (ds.y.is_categorical()) {
    for (Eigen::Index i = 0; i < n; ++i) groups[ds.y.values[static_cast<std::size_t>(i)]].push_back(i);
    for (const auto& [id, members] : groups) {
      if (members.size() < 2) {
        split.warnings.push_back("class " + std::to_string(id) +
                                 " has fewer than two members; using a non-stratified split");
        groups.clear();
        break;
      }
    }
  }

  if (!groups.empty()) {
    split.stratified = true;
    // Largest-remainder allocation so the per-class counts sum to n_train.
    std::vector<std::vector<Eigen::Index>> members;
    std::vector<Eigen::Index> take;
    std::vector<std::pair<double, std::size_t>> remainders;
    Eigen::Index allotted = 0;
    for (auto& [id, idx] : groups) {
      const double exact = train_fraction * static_cast<double>(idx.size());
      const auto base = static_cast<Eigen::Index>(std::floor(exact));
      remainders.emplace_back(exact - static_cast<double>(base), members.size());
      members.push_back(idx);
      take.push_back(base);
      allotted += base;
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t k = 0; allotted < n_train && k < remainders.size(); ++k, ++allotted) {
      ++take[remainders[k].second];
    }
    for (std::size_t c = 0; c < members.size(); ++c) {
      shuffle(members[c], rng);
      train.insert(train.end(), members[c].begin(),
                   members[c].begin() + static_cast<std::ptrdiff_t>(take[c]));
    }
  } else {
    std::vector<Eigen::Index> all(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    shuffle(all, rng);
    train.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_train));
  }

  std::sort(train.begin(), train.end());
  std::vector<char> in_train(static_cast<std::size_t>(n), 0);
  for (Eigen::Index i : train) in_train[static_cast<std::size_t>(i)] = 1;
  std::vector<Eigen::Index> test;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!in_train[static_cast<std::size_t>(i)]) test.push_back(i);
  }

  split.train = subset(ds, train);
  split.test = subset(ds, test);
  split.train_index = std::move(train);
  split.test_index = std::move(test);
  return split;
}

DataMatrix apply_standardization(const Standardization& stats, const DataMatrix& x) {
  if (x.rows() != stats.mean.size()) {
    fail(ErrorKind::InvalidDimension, "standardization fitted on a different dimensionality");
  }
  DataMatrix out = x.colwise() - stats.mean;
  return stats.scale.cwiseInverse().asDiagonal() * out;
}

Standardized standardize(const DataMatrix& train, const DataMatrix& test) {
  if (train.cols() == 0) fail(ErrorKind::InvalidInput, "cannot standardize an empty training set");
  if (test.rows() != train.rows() && test.size() != 0) {
    fail(ErrorKind::InvalidDimension, "train and test dimensionality differ");
  }
  Standardized out;
  out.stats.mean = train.rowwise().mean();
  const DataMatrix centered = train.colwise() - out.stats.mean;
  const Vector var = centered.array().square().rowwise().mean();
  out.stats.scale = var.unaryExpr([](double v) { return v > 0.0 ? std::sqrt(v) : 1.0; });
  out.train = apply_standardization(out.stats, train);
  out.test = test.size() == 0 ? DataMatrix(train.rows(), 0) : apply_standardization(out.stats, test);
  return out;
}

}  // namespace rda
