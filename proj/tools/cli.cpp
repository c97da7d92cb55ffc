#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "rda/core.hpp"
#include "rda/csv.hpp"
#include "rda/datasets.hpp"
#include "rda/dual.hpp"
#include "rda/error.hpp"
#include "rda/eval.hpp"
#include "rda/experiments.hpp"
#include "rda/kernel_rda.hpp"
#include "rda/model_io.hpp"
#include "rda/random.hpp"

namespace rda::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::Unsupported:
      return kConfigError;
    case ErrorKind::NotPsd:
    case ErrorKind::Numerical:
      return kNumericalError;
    default:
      return kDataError;
  }
}

// Writes via a sibling temporary file so readers never see partial output.
void write_atomically(const std::string& path, const std::string& contents) {
  const fs::path target(path);
  if (target.has_parent_path() && !fs::exists(target.parent_path())) {
    fail(ErrorKind::Io, "directory '" + target.parent_path().string() + "' does not exist");
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
    out << contents;
    if (!out) fail(ErrorKind::Io, "failed writing '" + path + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) fail(ErrorKind::Io, "cannot move output into '" + path + "': " + ec.message());
}

ordered_json kernel_json(const std::optional<KernelSpec>& k) {
  if (!k) return nullptr;
  ordered_json j = {{"family", to_string(k->family)}};
  if (k->gamma) j["gamma"] = *k->gamma;
  if (k->family == KernelFamily::Polynomial) {
    j["degree"] = k->degree;
    j["offset"] = k->offset;
  }
  return j;
}

struct Manifest {
  ordered_json doc;

  explicit Manifest(const std::string& command) {
    doc["command"] = command;
    doc["config"] = ordered_json::object();
    doc["seed"] = nullptr;
    doc["inputs"] = ordered_json::array();
    doc["outputs"] = ordered_json::array();
    doc["library_version"] = RDA_VERSION;
  }
  void input(const std::string& path) {
    doc["inputs"].push_back({{"path", path}, {"sha256", sha256_file(path)}});
  }
  void output(const std::string& path) { doc["outputs"].push_back(path); }
  void write(const std::string& path) {
    doc["outputs"].push_back(path);
    write_atomically(path, doc.dump(2) + "\n");
  }
};

std::string manifest_path(const std::string& explicit_path, const std::string& output) {
  return explicit_path.empty() ? output + ".manifest.json" : explicit_path;
}

// Shared model flags.
struct ModelFlags {
  double r1 = 0.0;
  double r2 = 0.0;
  std::string variant = "primal";
  bool robust = false;
  std::string kernel;
  std::optional<double> gamma;
  int degree = 2;
  double offset = 1.0;
  std::string label_kernel;
  std::optional<double> label_gamma;
  std::optional<Eigen::Index> dims;
  std::string dual_route = "auto";

  void add(CLI::App* app) {
    app->add_option("--r1", r1, "Roweis factor r1 in [0, 1]")->capture_default_str();
    app->add_option("--r2", r2, "Roweis factor r2 in [0, 1]")->capture_default_str();
    app->add_option("--variant", variant, "primal|dual|kernel|kernel-pca|kernel-spca")
        ->check(CLI::IsMember({"primal", "dual", "kernel", "kernel-pca", "kernel-spca"}))
        ->capture_default_str();
    app->add_flag("--robust", robust, "Repair the constraint spectrum before solving");
    app->add_option("--kernel", kernel, "Data kernel for kernel variants: linear|rbf|polynomial (default rbf)");
    app->add_option("--gamma", gamma, "RBF width; median heuristic when omitted");
    app->add_option("--degree", degree, "Polynomial kernel degree")->capture_default_str();
    app->add_option("--offset", offset, "Polynomial kernel offset")->capture_default_str();
    app->add_option("--label-kernel", label_kernel,
                    "Label kernel: delta|rbf|linear|polynomial (default delta for classes, rbf for targets)");
    app->add_option("--label-gamma", label_gamma, "RBF width of the label kernel");
    app->add_option("--dims", dims, "Embedding dimensionality; chosen from the spectrum when omitted");
    app->add_option("--dual-route", dual_route, "auto|gram-eigen|svd")->capture_default_str();
  }

  bool kernelized() const { return variant.rfind("kernel", 0) == 0; }

  KernelSpec data_kernel() const {
    KernelSpec k;
    k.family = kernel.empty() ? KernelFamily::Rbf : parse_kernel_family(kernel);
    k.gamma = gamma;
    k.degree = degree;
    k.offset = offset;
    if (k.family != KernelFamily::Rbf && gamma) fail(ErrorKind::InvalidConfig, "--gamma applies to rbf only");
    k.validate();
    return k;
  }

  std::optional<KernelSpec> label_spec() const {
    if (label_kernel.empty()) {
      if (label_gamma) return KernelSpec::rbf(label_gamma);
      return std::nullopt;
    }
    KernelSpec k;
    k.family = parse_kernel_family(label_kernel);
    k.gamma = label_gamma;
    if (k.family != KernelFamily::Rbf && label_gamma) {
      fail(ErrorKind::InvalidConfig, "--label-gamma applies to an rbf label kernel only");
    }
    k.validate();
    return k;
  }

  void check() const {
    if (!kernelized() && (!kernel.empty() || gamma)) {
      fail(ErrorKind::InvalidConfig, "--kernel and --gamma apply to kernel variants only");
    }
    if (variant == "dual" && r2 != 0.0) fail(ErrorKind::Unsupported, "dual requires r2=0");
    if (variant == "kernel-pca" && (r1 != 0.0 || r2 != 0.0)) {
      fail(ErrorKind::InvalidConfig, "kernel-pca requires r1=0 and r2=0");
    }
    if (variant == "kernel-spca" && (r1 != 1.0 || r2 != 0.0)) {
      fail(ErrorKind::InvalidConfig, "kernel-spca requires r1=1 and r2=0");
    }
    if (robust && (variant == "dual" || variant == "kernel-pca" || variant == "kernel-spca")) {
      fail(ErrorKind::InvalidConfig, "--robust applies to the primal and kernel variants only");
    }
    if (variant != "dual" && dual_route != "auto") {
      fail(ErrorKind::InvalidConfig, "--dual-route applies to the dual variant only");
    }
    if (dims && *dims < 1) fail(ErrorKind::InvalidConfig, "--dims must be at least 1");
  }

  RoweisConfig roweis() const {
    RoweisConfig cfg;
    cfg.r1 = r1;
    cfg.r2 = r2;
    cfg.dims = dims;
    cfg.label_kernel = label_spec();
    cfg.robust = robust;
    return cfg;
  }
};

AnyModel fit_any(const ModelFlags& flags, const Dataset& ds) {
  flags.check();
  if (flags.variant == "primal") return fit(ds.x, ds.y, flags.roweis());
  if (flags.variant == "dual") {
    DualConfig cfg;
    cfg.r1 = flags.r1;
    cfg.r2 = flags.r2;
    cfg.dims = flags.dims;
    cfg.label_kernel = flags.label_spec();
    cfg.route = parse_dual_route(flags.dual_route);
    return fit_dual(ds.x, ds.y, cfg);
  }
  const KernelSpec k = flags.data_kernel();
  if (flags.variant == "kernel") return fit_direct(ds.x, ds.y, flags.roweis(), k);
  if (flags.variant == "kernel-pca") return fit_kernel_pca(ds.x, k, flags.dims);
  return fit_kernel_spca(ds.x, ds.y, k, flags.label_spec(), flags.dims);
}

ordered_json model_summary(const AnyModel& model) {
  ordered_json j;
  j["variant"] = variant_name(model);
  j["input_dim"] = model_input_dim(model);
  j["dims"] = model_dims(model);
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RdaModel>) {
          j["r1"] = m.config.r1;
          j["r2"] = m.config.r2;
          j["robust"] = m.config.robust;
          j["label_kernel"] = kernel_json(m.config.label_kernel);
          j["regularization"] = m.regularization;
          j["valid_eigenvalues"] = m.valid_count;
        } else if constexpr (std::is_same_v<T, DualRdaModel>) {
          j["r1"] = m.r1;
          j["r2"] = 0.0;
          j["label_kernel"] = kernel_json(m.label_kernel);
          j["route"] = to_string(m.route);
        } else {
          j["r1"] = m.config.r1;
          j["r2"] = m.config.r2;
          j["robust"] = m.config.robust;
          j["kernel"] = kernel_json(m.kernel);
          j["label_kernel"] = kernel_json(m.config.label_kernel);
          j["regularization"] = m.regularization;
          j["valid_eigenvalues"] = m.valid_count;
        }
      },
      model);
  return j;
}

Vector model_spectrum(const AnyModel& model) {
  return std::visit(
      [](const auto& m) -> Vector {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DualRdaModel>) {
          return m.sigma.array().square();
        } else {
          return m.spectrum;
        }
      },
      model);
}

std::vector<std::string> model_warnings(const AnyModel& model) {
  return std::visit([](const auto& m) { return m.warnings; }, model);
}

void print_spectrum(std::ostream& out, const Vector& spectrum, Eigen::Index kept, Eigen::Index limit) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) total += std::max(spectrum(i), 0.0);
  TextTable table({"index", "eigenvalue", "share", "cumulative", "kept"});
  double cumulative = 0.0;
  const Eigen::Index shown = std::min(spectrum.size(), limit);
  for (Eigen::Index i = 0; i < shown; ++i) {
    const double share = total > 0.0 ? std::max(spectrum(i), 0.0) / total : 0.0;
    cumulative += share;
    char value[32];
    std::snprintf(value, sizeof(value), "%.6e", spectrum(i));
    table.add_row({std::to_string(i + 1), value, fixed(share, 4), fixed(cumulative, 4), i < kept ? "*" : ""});
  }
  table.print(out);
  if (shown < spectrum.size()) {
    out << "(" << spectrum.size() - shown << " more eigenvalues not shown)\n";
  }
}

CsvReadOptions read_options(const std::string& label_column, const std::string& task) {
  CsvReadOptions opts;
  if (!label_column.empty()) opts.label_column = label_column;
  opts.task = parse_label_task(task);
  return opts;
}

std::string matrix_csv(const Matrix& samples, const std::vector<std::string>& header) {
  std::ostringstream ss;
  write_matrix_csv(ss, samples, header);
  return ss.str();
}

// Commands

struct GenArgs {
  std::string generator;
  Eigen::Index n = 400;
  std::uint64_t seed = 0;
  int id = 1;
  double margin = 0.1;
  double noise = 0.1;
  double noise_scale = 1.0;
  std::string out;
  std::string manifest;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  Dataset ds;
  ordered_json cfg = {{"generator", a.generator}, {"n", a.n}};
  if (a.generator == "xor") {
    ds = gen_xor(a.n, a.seed, {a.margin});
    cfg["margin"] = a.margin;
  } else if (a.generator == "rings") {
    RingsOptions opts;
    opts.noise = a.noise;
    ds = gen_rings(a.n, a.seed, opts);
    cfg["inner_radius"] = opts.inner_radius;
    cfg["outer_radius"] = opts.outer_radius;
    cfg["noise"] = a.noise;
  } else if (a.generator == "bench") {
    ds = gen_regression_benchmark(a.id, a.n, a.seed, {a.noise_scale});
    cfg["benchmark"] = a.id;
    cfg["noise_scale"] = a.noise_scale;
  } else {
    fail(ErrorKind::InvalidConfig, "unknown generator '" + a.generator + "' (expected xor, rings or bench)");
  }
  std::ostringstream ss;
  write_dataset_csv(ss, ds);
  write_atomically(a.out, ss.str());

  Manifest m("gen");
  m.doc["config"] = cfg;
  m.doc["seed"] = a.seed;
  m.output(a.out);
  m.write(manifest_path(a.manifest, a.out));
  out << "wrote " << ds.size() << " samples with " << ds.x.rows() << " features to " << a.out << "\n";
  return kOk;
}

struct FitArgs {
  std::string data;
  std::string label_column;
  std::string task = "auto";
  ModelFlags model;
  std::string out;
  std::string manifest;
  Eigen::Index show = 20;
};

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
  a.model.check();
  const Dataset ds = read_dataset_csv(a.data, read_options(a.label_column, a.task));
  const AnyModel model = fit_any(a.model, ds);
  std::ostringstream ss;
  save_model(ss, model);
  write_atomically(a.out, ss.str());

  Manifest m("fit");
  m.doc["config"] = model_summary(model);
  m.input(a.data);
  m.output(a.out);
  m.write(manifest_path(a.manifest, a.out));

  for (const auto& w : model_warnings(model)) err << "warning: " << w << "\n";
  out << variant_name(model) << " model, " << model_input_dim(model) << " -> " << model_dims(model)
      << " dimensions, s = " << fixed(supervision_level(a.model.r1, a.model.r2), 3) << "\n";
  print_spectrum(out, model_spectrum(model), model_dims(model), a.show);
  out << "wrote " << a.out << "\n";
  return kOk;
}

struct ApplyArgs {
  std::string model;
  std::string data;
  std::string drop_column = "label";
  std::string out;
  std::string manifest;
};

DataMatrix read_features(const std::string& path, const std::string& drop_column, Eigen::Index expected) {
  const CsvTable table = read_csv_file(path);
  std::optional<std::string> drop;
  if (!drop_column.empty()) drop = drop_column;
  // Without a header, a trailing label column is recognized by width.
  if (table.header.empty() && !table.rows.empty() &&
      static_cast<Eigen::Index>(table.rows.front().size()) == expected + 1 && drop) {
    CsvTable trimmed = table;
    for (auto& row : trimmed.rows) {
      if (!row.empty()) row.pop_back();
    }
    return matrix_from_table(trimmed, std::nullopt).x;
  }
  DataMatrix x = matrix_from_table(table, drop).x;
  if (table.rows.empty() && table.header.empty()) x.resize(expected, 0);
  return x;
}

int cmd_apply(const std::string& command, const ApplyArgs& a, std::ostream& out) {
  const AnyModel model = load_model_file(a.model);
  const bool recon = command == "reconstruct";
  if (recon && std::holds_alternative<KernelRdaModel>(model)) {
    fail(ErrorKind::Unsupported,
         "reconstruct is unavailable for kernel models: the feature-space map Phi(X) is never formed");
  }
  const DataMatrix x = read_features(a.data, a.drop_column, model_input_dim(model));
  const Matrix result = recon ? reconstruct_any(model, x) : transform(model, x);
  const auto header = recon ? numbered_header("x", model_input_dim(model)) : numbered_header("e", result.rows());
  write_atomically(a.out, matrix_csv(result, header));

  Manifest m(command);
  m.doc["config"] = model_summary(model);
  m.input(a.model);
  m.input(a.data);
  m.output(a.out);
  m.write(manifest_path(a.manifest, a.out));
  out << "wrote " << x.cols() << " rows to " << a.out << "\n";
  return kOk;
}

struct SweepArgs {
  std::string data;
  std::string generator;
  Eigen::Index n = 400;
  int id = 1;
  std::string label_column;
  std::string task = "auto";
  int grid = 3;
  ModelFlags model;
  double train_fraction = 0.7;
  std::uint64_t seed = 0;
  std::string out;
  std::string manifest;
};

int cmd_sweep(SweepArgs a, std::ostream& out, std::ostream& err) {
  if (a.grid < 2) fail(ErrorKind::InvalidConfig, "--grid must be at least 2");
  if (a.model.variant != "primal" && a.model.variant != "kernel") {
    fail(ErrorKind::InvalidConfig, "sweep supports the primal and kernel variants");
  }
  if (a.data.empty() == a.generator.empty()) {
    fail(ErrorKind::InvalidConfig, "sweep needs exactly one of --data or --generator");
  }
  Dataset ds;
  ordered_json source;
  if (!a.data.empty()) {
    ds = read_dataset_csv(a.data, read_options(a.label_column, a.task));
    source = {{"data", a.data}};
  } else if (a.generator == "bench") {
    ds = gen_regression_benchmark(a.id, a.n, derive_seed(a.seed, 0));
    source = {{"generator", "bench"}, {"benchmark", a.id}, {"n", a.n}};
  } else {
    ds = make_toy(a.generator, a.n, derive_seed(a.seed, 0));
    source = {{"generator", a.generator}, {"n", a.n}};
  }
  const Split split = train_test_split(ds, a.train_fraction, derive_seed(a.seed, 1));
  for (const auto& w : split.warnings) err << "warning: " << w << "\n";

  std::vector<double> r2_values;
  std::vector<double> r1_values;
  for (int i = 0; i < a.grid; ++i) r1_values.push_back(static_cast<double>(i) / (a.grid - 1));
  if (ds.y.is_categorical()) {
    r2_values = r1_values;
  } else {
    r2_values = {0.0};
    err << "warning: regression labels restrict the sweep to r2 = 0\n";
  }

  const Metric metric = ds.y.is_categorical() ? Metric::ErrorRate : Metric::Rmse;
  TextTable table({"r1", "r2", "s", "metric", "value"});
  for (double r2 : r2_values) {
    for (double r1 : r1_values) {
      ModelFlags flags = a.model;
      flags.r1 = r1;
      flags.r2 = r2;
      const AnyModel model = fit_any(flags, split.train);
      Matrix train_emb;
      if (const auto* km = std::get_if<KernelRdaModel>(&model)) {
        train_emb = training_embedding(*km);
      } else {
        train_emb = transform(model, split.train.x);
      }
      const Matrix test_emb = transform(model, split.test.x);
      const double value = metric == Metric::ErrorRate
                               ? knn_classify(train_emb, split.train.y, test_emb, split.test.y).value
                               : linear_regression_rmse(train_emb, split.train.y, test_emb, split.test.y).value;
      table.add_row({format_double(r1), format_double(r2), format_double(supervision_level(r1, r2)),
                     to_string(metric), format_double(value)});
    }
  }
  std::ostringstream ss;
  table.write_csv(ss);
  write_atomically(a.out, ss.str());

  Manifest m("sweep");
  ordered_json cfg = {{"source", source},
                      {"grid", a.grid},
                      {"variant", a.model.variant},
                      {"train_fraction", a.train_fraction},
                      {"metric", to_string(metric)}};
  if (a.model.dims) cfg["dims"] = *a.model.dims;
  if (a.model.kernelized()) cfg["kernel"] = kernel_json(a.model.data_kernel());
  cfg["label_kernel"] = kernel_json(a.model.label_spec());
  cfg["robust"] = a.model.robust;
  m.doc["config"] = cfg;
  m.doc["seed"] = a.seed;
  if (!a.data.empty()) m.input(a.data);
  m.output(a.out);
  m.write(manifest_path(a.manifest, a.out));
  table.print(out);
  return kOk;
}

struct ExperimentArgs {
  std::string out_dir;
  std::size_t reps = 50;
  std::uint64_t seed = 1;
  std::uint64_t toy_seed = 7;
};

int cmd_experiments(const ExperimentArgs& a, std::ostream& out) {
  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir / "panels", ec);
  if (ec) fail(ErrorKind::Io, "cannot create '" + a.out_dir + "': " + ec.message());
  Manifest m("experiments");

  RegressionTableOptions table_opts;
  table_opts.repetitions = a.reps;
  table_opts.first_seed = a.seed;
  const auto cells = run_regression_table(table_opts);
  const TextTable wide = regression_table(cells);
  std::ostringstream txt;
  wide.print(txt);
  const std::string table_txt = (dir / "regression_table.txt").string();
  write_atomically(table_txt, txt.str());
  m.output(table_txt);
  std::ostringstream csv;
  regression_long_table(cells).write_csv(csv);
  const std::string table_csv = (dir / "regression_table.csv").string();
  write_atomically(table_csv, csv.str());
  m.output(table_csv);
  out << "regression benchmarks (" << a.reps << " repetitions, test RMSE)\n";
  wide.print(out);

  SeparationOptions sep;
  sep.data_seed = a.toy_seed;
  sep.split_seed = a.toy_seed;
  TextTable sep_table({"dataset", "method", "error"});
  for (const auto& r : run_separation(sep)) {
    sep_table.add_row({r.dataset, to_string(r.method), fixed(r.error, 4)});
  }
  std::ostringstream sep_csv;
  sep_table.write_csv(sep_csv);
  const std::string sep_path = (dir / "separation.csv").string();
  write_atomically(sep_path, sep_csv.str());
  m.output(sep_path);
  out << "\n1-NN test error, one embedding dimension\n";
  sep_table.print(out);

  std::size_t panel_count = 0;
  for (const std::string name : {"xor", "rings"}) {
    for (const auto& panel : embedding_panels(name, sep, 2)) {
      std::ostringstream ss;
      auto header = numbered_header("e", panel.train_emb.rows());
      header.insert(header.end(), {"label", "set"});
      for (std::size_t c = 0; c < header.size(); ++c) ss << (c ? "," : "") << header[c];
      ss << '\n';
      auto rows = [&](const Matrix& emb, const Dataset& part, const char* set) {
        for (Eigen::Index j = 0; j < emb.cols(); ++j) {
          for (Eigen::Index i = 0; i < emb.rows(); ++i) ss << format_double(emb(i, j)) << ',';
          ss << format_double(part.y.values[static_cast<std::size_t>(j)]) << ',' << set << '\n';
        }
      };
      rows(panel.train_emb, panel.split.train, "train");
      rows(panel.test_emb, panel.split.test, "test");
      const std::string path = (dir / "panels" / (panel_name(panel) + ".csv")).string();
      write_atomically(path, ss.str());
      m.output(path);
      ++panel_count;
    }
  }
  out << "\nwrote " << panel_count << " embedding panels to " << (dir / "panels").string() << "\n";

  m.doc["config"] = {{"repetitions", a.reps},
                     {"benchmark_n", table_opts.n},
                     {"train_fraction", table_opts.train_fraction},
                     {"dims", table_opts.dims},
                     {"toy_n", sep.n},
                     {"toy_seed", a.toy_seed}};
  m.doc["seed"] = a.seed;
  m.write((dir / "manifest.json").string());
  return kOk;
}

}  // namespace

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 15];
  while (in) {
    in.read(buf, sizeof(buf));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Roweis discriminant analysis: fit, project and evaluate subspace models", "rda-cli"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RDA_VERSION);

  auto add_seed = [&](CLI::App* sub, std::uint64_t& target) {
    sub->add_option("--seed", target, "Random seed")->envname("RDA_SEED")->capture_default_str();
  };

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic dataset (xor, rings or bench)");
  gen_cmd->add_option("generator", gen.generator, "xor|rings|bench")->required();
  gen_cmd->add_option("--n", gen.n, "Sample count")->capture_default_str();
  gen_cmd->add_option("--id", gen.id, "Benchmark id (1-3) for bench")->capture_default_str();
  gen_cmd->add_option("--margin", gen.margin, "Axis margin for xor")->capture_default_str();
  gen_cmd->add_option("--noise", gen.noise, "Radial noise for rings")->capture_default_str();
  gen_cmd->add_option("--noise-scale", gen.noise_scale, "Noise multiplier for bench")->capture_default_str();
  gen_cmd->add_option("-o,--out", gen.out, "Output CSV")->required();
  gen_cmd->add_option("--manifest", gen.manifest, "Manifest path (default <out>.manifest.json)");
  add_seed(gen_cmd, gen.seed);

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model and print its spectrum");
  fit_cmd->add_option("--data", fit_args.data, "Dataset CSV")->required();
  fit_cmd->add_option("--label-column", fit_args.label_column, "Label column name or index (default label/last)");
  fit_cmd->add_option("--task", fit_args.task, "auto|classification|regression")->capture_default_str();
  fit_args.model.add(fit_cmd);
  fit_cmd->add_option("--show", fit_args.show, "Spectrum rows to print")->capture_default_str();
  fit_cmd->add_option("-o,--out", fit_args.out, "Model file")->required();
  fit_cmd->add_option("--manifest", fit_args.manifest, "Manifest path (default <out>.manifest.json)");

  ApplyArgs transform_args;
  ApplyArgs recon_args;
  CLI::App* apply_cmds[2];
  int slot = 0;
  for (auto* a : {&transform_args, &recon_args}) {
    const bool t = a == &transform_args;
    auto* sub = app.add_subcommand(t ? "transform" : "reconstruct",
                                   t ? "Embed samples with a fitted model" : "Reconstruct samples with a fitted model");
    sub->add_option("--model", a->model, "Model file")->required();
    sub->add_option("--data", a->data, "Samples CSV")->required();
    sub->add_option("--drop-column", a->drop_column, "Column to ignore, e.g. labels")->capture_default_str();
    sub->add_option("-o,--out", a->out, "Output CSV")->required();
    sub->add_option("--manifest", a->manifest, "Manifest path (default <out>.manifest.json)");
    apply_cmds[slot++] = sub;
  }

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Fit and evaluate over an (r1, r2) grid");
  sweep_cmd->add_option("--data", sweep.data, "Dataset CSV");
  sweep_cmd->add_option("--generator", sweep.generator, "xor|rings|bench instead of --data");
  sweep_cmd->add_option("--n", sweep.n, "Sample count for --generator")->capture_default_str();
  sweep_cmd->add_option("--id", sweep.id, "Benchmark id for --generator bench")->capture_default_str();
  sweep_cmd->add_option("--label-column", sweep.label_column, "Label column name or index");
  sweep_cmd->add_option("--task", sweep.task, "auto|classification|regression")->capture_default_str();
  sweep_cmd->add_option("--grid", sweep.grid, "Grid points per axis")->capture_default_str();
  sweep_cmd->add_option("--train-fraction", sweep.train_fraction, "Training share")->capture_default_str();
  sweep.model.add(sweep_cmd);
  sweep_cmd->add_option("-o,--out", sweep.out, "Output CSV (r1, r2, s, metric, value)")->required();
  sweep_cmd->add_option("--manifest", sweep.manifest, "Manifest path (default <out>.manifest.json)");
  add_seed(sweep_cmd, sweep.seed);

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiments", "Run the regression benchmarks and toy embeddings");
  exp_cmd->add_option("-o,--out-dir", exp.out_dir, "Output directory")->required();
  exp_cmd->add_option("--reps", exp.reps, "Repetitions per regression cell")->capture_default_str();
  exp_cmd->add_option("--toy-seed", exp.toy_seed, "Seed for the toy datasets")->capture_default_str();
  add_seed(exp_cmd, exp.seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (fit_cmd->parsed()) return cmd_fit(fit_args, out, err);
    if (apply_cmds[0]->parsed()) return cmd_apply("transform", transform_args, out);
    if (apply_cmds[1]->parsed()) return cmd_apply("reconstruct", recon_args, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep, out, err);
    if (exp_cmd->parsed()) return cmd_experiments(exp, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kConfigError;
}

}  // namespace rda::cli
