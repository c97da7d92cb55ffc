#include "rda/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>

#include <Eigen/Dense>

#include "rda/error.hpp"

namespace rda {

std::string to_string(Metric metric) { return metric == Metric::ErrorRate ? "error-rate" : "rmse"; }

EvalReport EvalReport::single(Metric metric, double value) {
  EvalReport r;
  r.metric = metric;
  r.value = value;
  r.per_seed_values = {value};
  return r;
}

std::vector<double> knn_predict(const Matrix& train_emb, const std::vector<double>& train_y,
                                const Matrix& test_emb, int k) {
  const Eigen::Index n = train_emb.cols();
  if (n == 0) fail(ErrorKind::InvalidInput, "knn: empty training set");
  if (static_cast<Eigen::Index>(train_y.size()) != n) {
    fail(ErrorKind::InvalidDimension, "knn: label count does not match training embeddings");
  }
  if (k < 1 || k > n) fail(ErrorKind::InvalidConfig, "knn: k must be in [1, n]");
  if (test_emb.cols() > 0 && test_emb.rows() != train_emb.rows()) {
    fail(ErrorKind::InvalidDimension, "knn: train and test embeddings differ in dimension");
  }

  std::vector<double> out(static_cast<std::size_t>(test_emb.cols()));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  Vector dist(n);
  for (Eigen::Index t = 0; t < test_emb.cols(); ++t) {
    dist = (train_emb.colwise() - test_emb.col(t)).colwise().squaredNorm().transpose();
    if (k == 1) {
      Eigen::Index best = 0;
      for (Eigen::Index i = 1; i < n; ++i) {
        if (dist(i) < dist(best)) best = i;
      }
      out[static_cast<std::size_t>(t)] = train_y[static_cast<std::size_t>(best)];
      continue;
    }
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return dist(a) < dist(b) || (dist(a) == dist(b) && a < b);
    });
    std::map<double, int> votes;
    for (int i = 0; i < k; ++i) ++votes[train_y[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]];
    int top = 0;
    for (const auto& [label, count] : votes) top = std::max(top, count);
    for (int i = 0; i < k; ++i) {
      const double label = train_y[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
      if (votes[label] == top) {
        out[static_cast<std::size_t>(t)] = label;
        break;
      }
    }
  }
  return out;
}

EvalReport knn_classify(const Matrix& train_emb, const LabelVector& train_y, const Matrix& test_emb,
                        const LabelVector& test_y, int k) {
  if (!train_y.is_categorical()) fail(ErrorKind::InvalidLabel, "knn: labels must be categorical");
  if (static_cast<Eigen::Index>(test_y.size()) != test_emb.cols()) {
    fail(ErrorKind::InvalidDimension, "knn: test label count does not match test embeddings");
  }
  const auto pred = knn_predict(train_emb, train_y.values, test_emb, k);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] != test_y.values[i]) ++wrong;
  }
  const double err = pred.empty() ? 0.0 : static_cast<double>(wrong) / static_cast<double>(pred.size());
  return EvalReport::single(Metric::ErrorRate, err);
}

Vector LinearFit::predict(const Matrix& emb) const {
  return (emb.transpose() * weights).array() + intercept;
}

LinearFit fit_linear(const Matrix& train_emb, const std::vector<double>& train_y) {
  const Eigen::Index n = train_emb.cols();
  const Eigen::Index p = train_emb.rows();
  if (n == 0) fail(ErrorKind::InvalidInput, "regression: empty training set");
  if (static_cast<Eigen::Index>(train_y.size()) != n) {
    fail(ErrorKind::InvalidDimension, "regression: target count does not match training embeddings");
  }
  Matrix design(n, p + 1);
  design.leftCols(p) = train_emb.transpose();
  design.col(p).setOnes();
  const Vector y = Eigen::Map<const Vector>(train_y.data(), n);

  LinearFit fit;
  Vector beta;
  Eigen::ColPivHouseholderQR<Matrix> qr(design);
  if (n > p && qr.rank() == p + 1) {
    beta = qr.solve(y);
  } else {
    fit.ridge = true;
    Matrix gram = design.transpose() * design;
    gram.diagonal().array() += 1e-8;
    beta = gram.ldlt().solve(design.transpose() * y);
  }
  fit.weights = beta.head(p);
  fit.intercept = beta(p);
  return fit;
}

double rmse(const Vector& predicted, const std::vector<double>& target) {
  if (static_cast<std::size_t>(predicted.size()) != target.size()) {
    fail(ErrorKind::InvalidDimension, "rmse: size mismatch");
  }
  if (target.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double e = predicted(static_cast<Eigen::Index>(i)) - target[i];
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(target.size()));
}

EvalReport linear_regression_rmse(const Matrix& train_emb, const LabelVector& train_y,
                                  const Matrix& test_emb, const LabelVector& test_y) {
  const auto fit = fit_linear(train_emb, train_y.values);
  if (static_cast<Eigen::Index>(test_y.size()) != test_emb.cols()) {
    fail(ErrorKind::InvalidDimension, "regression: test target count does not match test embeddings");
  }
  const Vector pred = test_emb.cols() > 0 ? fit.predict(test_emb) : Vector();
  return EvalReport::single(Metric::Rmse, rmse(pred, test_y.values));
}

EvalReport repeat_experiment(const std::function<double(std::uint64_t)>& trial,
                             const std::vector<std::uint64_t>& seeds, Metric metric) {
  if (seeds.empty()) fail(ErrorKind::InvalidConfig, "repeat_experiment: need at least one repetition");
  EvalReport r;
  r.metric = metric;
  r.seeds = seeds;
  for (auto s : seeds) r.per_seed_values.push_back(trial(s));
  const double m = static_cast<double>(seeds.size());
  double sum = 0.0;
  for (double v : r.per_seed_values) sum += v;
  r.value = sum / m;
  double var = 0.0;
  for (double v : r.per_seed_values) var += (v - r.value) * (v - r.value);
  r.std = std::sqrt(var / m);
  return r;
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count) {
  std::vector<std::uint64_t> out(count);
  std::iota(out.begin(), out.end(), first);
  return out;
}

TextTable::TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

void TextTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) {
    fail(ErrorKind::InvalidDimension, "table row has " + std::to_string(row.size()) + " cells, header has " +
                                          std::to_string(header_.size()));
  }
  rows_.push_back(std::move(row));
}

void TextTable::print(std::ostream& out) const {
  std::vector<std::size_t> width(header_.size());
  for (std::size_t c = 0; c < header_.size(); ++c) {
    width[c] = header_[c].size();
    for (const auto& row : rows_) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out << "  ";
      out << std::string(width[c] - cells[c].size(), ' ') << cells[c];
    }
    out << '\n';
  };
  line(header_);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out << std::string(total + 2 * (width.empty() ? 0 : width.size() - 1), '-') << '\n';
  for (const auto& row : rows_) line(row);
}

void TextTable::write_csv(std::ostream& out) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << cells[c];
    out << '\n';
  };
  line(header_);
  for (const auto& row : rows_) line(row);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace rda
