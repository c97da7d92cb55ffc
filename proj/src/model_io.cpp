#include "rda/model_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "rda/error.hpp"

namespace rda {
namespace {

using nlohmann::json;

json matrix_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json vector_json(const Vector& v) {
  json data = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) data.push_back(v(i));
  return data;
}

Matrix matrix_from(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(data.size()) != rows * cols) {
    fail(ErrorKind::InvalidInput, "model file: matrix shape does not match its data");
  }
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j2 = 0; j2 < cols; ++j2) m(i, j2) = data[k++].get<double>();
  }
  return m;
}

Vector vector_from(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

json kernel_json(const KernelSpec& k) {
  json out = {{"family", to_string(k.family)}, {"degree", k.degree}, {"offset", k.offset}};
  out["gamma"] = k.gamma ? json(*k.gamma) : json(nullptr);
  return out;
}

KernelSpec kernel_from(const json& j) {
  KernelSpec k;
  k.family = parse_kernel_family(j.at("family").get<std::string>());
  if (!j.at("gamma").is_null()) k.gamma = j.at("gamma").get<double>();
  k.degree = j.at("degree").get<int>();
  k.offset = j.at("offset").get<double>();
  return k;
}

json optional_kernel_json(const std::optional<KernelSpec>& k) { return k ? kernel_json(*k) : json(nullptr); }

std::optional<KernelSpec> optional_kernel_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return kernel_from(j);
}

json config_json(const RoweisConfig& c) {
  json out = {{"r1", c.r1},
              {"r2", c.r2},
              {"robust", c.robust},
              {"label_kernel", optional_kernel_json(c.label_kernel)},
              {"reg", {{"initial", c.reg.initial}, {"growth", c.reg.growth}, {"max", c.reg.max},
                       {"pivot_rel", c.reg.pivot_rel}}},
              {"valid_eig_threshold", c.valid_eig_threshold},
              {"auto_ratio", c.auto_ratio}};
  out["dims"] = c.dims ? json(*c.dims) : json(nullptr);
  return out;
}

RoweisConfig config_from(const json& j) {
  RoweisConfig c;
  c.r1 = j.at("r1").get<double>();
  c.r2 = j.at("r2").get<double>();
  c.robust = j.at("robust").get<bool>();
  c.label_kernel = optional_kernel_from(j.at("label_kernel"));
  const auto& reg = j.at("reg");
  c.reg.initial = reg.at("initial").get<double>();
  c.reg.growth = reg.at("growth").get<double>();
  c.reg.max = reg.at("max").get<double>();
  c.reg.pivot_rel = reg.at("pivot_rel").get<double>();
  c.valid_eig_threshold = j.at("valid_eig_threshold").get<double>();
  c.auto_ratio = j.at("auto_ratio").get<double>();
  if (!j.at("dims").is_null()) c.dims = j.at("dims").get<Eigen::Index>();
  return c;
}

json model_json(const RdaModel& m) {
  return {{"format", kModelFormat},
          {"variant", "primal"},
          {"config", config_json(m.config)},
          {"mean", vector_json(m.mean)},
          {"eigvals", vector_json(m.eigvals)},
          {"spectrum", vector_json(m.spectrum)},
          {"valid_count", m.valid_count},
          {"regularization", m.regularization},
          {"residual", m.residual},
          {"basis", matrix_json(m.basis)},
          {"warnings", m.warnings}};
}

json model_json(const DualRdaModel& m) {
  return {{"format", kModelFormat},
          {"variant", "dual"},
          {"r1", m.r1},
          {"label_kernel", optional_kernel_json(m.label_kernel)},
          {"route", to_string(m.route)},
          {"mean", vector_json(m.mean)},
          {"sigma", vector_json(m.sigma)},
          {"v", matrix_json(m.v)},
          {"factor_w", matrix_json(m.factor_w)},
          {"warnings", m.warnings}};
}

json model_json(const KernelRdaModel& m) {
  return {{"format", kModelFormat},
          {"variant", to_string(m.variant)},
          {"kernel", kernel_json(m.kernel)},
          {"config", config_json(m.config)},
          {"train_x", matrix_json(m.train_x)},
          {"theta", matrix_json(m.theta)},
          {"v", matrix_json(m.v)},
          {"sigma", vector_json(m.sigma)},
          {"upsilon", matrix_json(m.upsilon)},
          {"train_row_means", vector_json(m.train_row_means)},
          {"train_grand_mean", m.train_grand_mean},
          {"eigvals", vector_json(m.eigvals)},
          {"spectrum", vector_json(m.spectrum)},
          {"valid_count", m.valid_count},
          {"regularization", m.regularization},
          {"residual", m.residual},
          {"warnings", m.warnings}};
}

AnyModel model_from(const json& j) {
  const auto format = j.at("format").get<std::string>();
  if (format != kModelFormat) fail(ErrorKind::InvalidInput, "unsupported model format '" + format + "'");
  const auto variant = j.at("variant").get<std::string>();
  if (variant == "primal") {
    RdaModel m;
    m.config = config_from(j.at("config"));
    m.mean = vector_from(j.at("mean"));
    m.eigvals = vector_from(j.at("eigvals"));
    m.spectrum = vector_from(j.at("spectrum"));
    m.valid_count = j.at("valid_count").get<std::size_t>();
    m.regularization = j.at("regularization").get<double>();
    m.residual = j.at("residual").get<double>();
    m.basis = matrix_from(j.at("basis"));
    m.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (m.basis.rows() != m.mean.size() || m.basis.cols() != m.eigvals.size()) {
      fail(ErrorKind::InvalidInput, "model file: inconsistent primal model shapes");
    }
    return m;
  }
  if (variant == "dual") {
    DualRdaModel m;
    m.r1 = j.at("r1").get<double>();
    m.label_kernel = optional_kernel_from(j.at("label_kernel"));
    m.route = parse_dual_route(j.at("route").get<std::string>());
    m.mean = vector_from(j.at("mean"));
    m.sigma = vector_from(j.at("sigma"));
    m.v = matrix_from(j.at("v"));
    m.factor_w = matrix_from(j.at("factor_w"));
    m.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (m.factor_w.rows() != m.mean.size() || m.factor_w.cols() != m.v.rows() ||
        m.v.cols() != m.sigma.size()) {
      fail(ErrorKind::InvalidInput, "model file: inconsistent dual model shapes");
    }
    return m;
  }
  KernelRdaModel m;
  m.variant = parse_kernel_variant(variant);
  m.kernel = kernel_from(j.at("kernel"));
  m.config = config_from(j.at("config"));
  m.train_x = matrix_from(j.at("train_x"));
  m.theta = matrix_from(j.at("theta"));
  m.v = matrix_from(j.at("v"));
  m.sigma = vector_from(j.at("sigma"));
  m.upsilon = matrix_from(j.at("upsilon"));
  m.train_row_means = vector_from(j.at("train_row_means"));
  m.train_grand_mean = j.at("train_grand_mean").get<double>();
  m.eigvals = vector_from(j.at("eigvals"));
  m.spectrum = vector_from(j.at("spectrum"));
  m.valid_count = j.at("valid_count").get<std::size_t>();
  m.regularization = j.at("regularization").get<double>();
  m.residual = j.at("residual").get<double>();
  m.warnings = j.at("warnings").get<std::vector<std::string>>();
  return m;
}

}  // namespace

std::string variant_name(const AnyModel& model) {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RdaModel>) {
          return "primal";
        } else if constexpr (std::is_same_v<T, DualRdaModel>) {
          return "dual";
        } else {
          return to_string(m.variant);
        }
      },
      model);
}

Eigen::Index model_input_dim(const AnyModel& model) {
  return std::visit([](const auto& m) { return m.input_dim(); }, model);
}

Eigen::Index model_dims(const AnyModel& model) {
  return std::visit([](const auto& m) { return m.dims(); }, model);
}

void save_model(std::ostream& out, const AnyModel& model) {
  const json j = std::visit([](const auto& m) { return model_json(m); }, model);
  out << j.dump(1) << '\n';
}

AnyModel load_model(std::istream& in) {
  json j;
  try {
    in >> j;
    return model_from(j);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed model file: ") + e.what());
  }
}

void save_model_file(const std::string& path, const AnyModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  save_model(out, model);
  if (!out) fail(ErrorKind::Io, "failed writing '" + path + "'");
}

AnyModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
  return load_model(in);
}

Matrix transform(const AnyModel& model, const DataMatrix& x) {
  return std::visit(
      [&](const auto& m) -> Matrix {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RdaModel>) {
          return project(m, x);
        } else if constexpr (std::is_same_v<T, DualRdaModel>) {
          return project_dual(m, x);
        } else {
          return project_kernel(m, x);
        }
      },
      model);
}

Matrix reconstruct_any(const AnyModel& model, const DataMatrix& x) {
  return std::visit(
      [&](const auto& m) -> Matrix {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RdaModel>) {
          return reconstruct(m, x);
        } else if constexpr (std::is_same_v<T, DualRdaModel>) {
          return reconstruct_dual(m, x);
        } else {
          fail(ErrorKind::Unsupported,
               "reconstruction is unavailable for kernel models: the feature-space map Phi(X) is never formed");
        }
      },
      model);
}

}  // namespace rda
