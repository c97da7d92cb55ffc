#include "rda/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "rda/error.hpp"

namespace rda {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  fields.push_back(trim(current));
  return fields;
}

bool is_missing(const std::string& field) {
  return field.empty() || field == "NA" || field == "na" || field == "nan" || field == "NaN" ||
         field == "NAN" || field == "null";
}

std::optional<double> parse_number(const std::string& field) {
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::size_t resolve_column(const CsvTable& table, const std::string& spec) {
  const std::size_t width = table.header.empty()
                                ? (table.rows.empty() ? 0 : table.rows.front().size())
                                : table.header.size();
  const auto it = std::find(table.header.begin(), table.header.end(), spec);
  if (it != table.header.end()) return static_cast<std::size_t>(it - table.header.begin());
  long long index = 0;
  const auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), index);
  if (ec == std::errc() && ptr == spec.data() + spec.size()) {
    if (index < 0) index += static_cast<long long>(width);
    if (index >= 0 && static_cast<std::size_t>(index) < width) return static_cast<std::size_t>(index);
  }
  fail(ErrorKind::InvalidInput, "label column '" + spec + "' not found");
}

}  // namespace

LabelTask parse_label_task(const std::string& name) {
  if (name == "auto") return LabelTask::Auto;
  if (name == "classification") return LabelTask::Classification;
  if (name == "regression") return LabelTask::Regression;
  fail(ErrorKind::InvalidConfig, "unknown task '" + name + "'");
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (first) {
      first = false;
      const bool header = std::any_of(fields.begin(), fields.end(), [](const std::string& f) {
        return !is_missing(f) && !parse_number(f).has_value();
      });
      if (header) {
        table.header = std::move(fields);
        continue;
      }
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
  return read_csv(in);
}

Dataset dataset_from_table(const CsvTable& table, const CsvReadOptions& opts) {
  std::size_t width = table.header.size();
  if (width == 0 && !table.rows.empty()) width = table.rows.front().size();
  if (width < 2) fail(ErrorKind::InvalidInput, "dataset needs at least one feature and a label column");

  std::size_t label_col = width - 1;
  if (opts.label_column) {
    label_col = resolve_column(table, *opts.label_column);
  } else if (const auto it = std::find(table.header.begin(), table.header.end(), "label");
             it != table.header.end()) {
    label_col = static_cast<std::size_t>(it - table.header.begin());
  }

  const auto n = static_cast<Eigen::Index>(table.rows.size());
  const auto d = static_cast<Eigen::Index>(width - 1);
  const std::size_t first_data_line = table.header.empty() ? 1 : 2;
  Dataset ds;
  ds.x.resize(d, n);
  std::vector<std::string> raw_labels;
  raw_labels.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = "row " + std::to_string(r + first_data_line);
    if (row.size() != width) {
      fail(ErrorKind::InvalidInput, where + ": expected " + std::to_string(width) + " fields, got " +
                                        std::to_string(row.size()));
    }
    Eigen::Index feature = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (is_missing(row[c])) {
        fail(ErrorKind::InvalidInput, where + ": missing value in column " + std::to_string(c + 1));
      }
      if (c == label_col) {
        raw_labels.push_back(row[c]);
        continue;
      }
      const auto value = parse_number(row[c]);
      if (!value || !std::isfinite(*value)) {
        fail(ErrorKind::InvalidInput, where + ": non-numeric value '" + row[c] + "' in column " +
                                          std::to_string(c + 1));
      }
      ds.x(feature++, static_cast<Eigen::Index>(r)) = *value;
    }
  }

  bool numeric = true;
  bool integral = true;
  std::vector<double> values;
  values.reserve(raw_labels.size());
  for (const auto& raw : raw_labels) {
    const auto v = parse_number(raw);
    if (!v || !std::isfinite(*v)) {
      numeric = false;
      break;
    }
    if (std::floor(*v) != *v) integral = false;
    values.push_back(*v);
  }

  if (!numeric) {
    if (opts.task == LabelTask::Regression) {
      fail(ErrorKind::InvalidInput, "regression task needs numeric labels");
    }
    // Non-numeric class names map to ids in sorted order.
    std::set<std::string> names(raw_labels.begin(), raw_labels.end());
    std::map<std::string, double> ids;
    double next = 0.0;
    for (const auto& name : names) ids[name] = next++;
    values.clear();
    for (const auto& raw : raw_labels) values.push_back(ids[raw]);
    ds.y = LabelVector::categorical(std::move(values));
    return ds;
  }

  LabelTask task = opts.task;
  if (task == LabelTask::Auto) task = integral ? LabelTask::Classification : LabelTask::Regression;
  if (task == LabelTask::Classification && !integral) {
    fail(ErrorKind::InvalidInput, "classification labels must be integral or class names");
  }
  ds.y = task == LabelTask::Classification ? LabelVector::categorical(std::move(values))
                                           : LabelVector::regression(std::move(values));
  return ds;
}

Dataset read_dataset_csv(const std::string& path, const CsvReadOptions& opts) {
  return dataset_from_table(read_csv_file(path), opts);
}

MatrixCsv matrix_from_table(const CsvTable& table, const std::optional<std::string>& drop_column) {
  std::size_t width = table.header.size();
  if (width == 0 && !table.rows.empty()) width = table.rows.front().size();
  std::optional<std::size_t> drop;
  if (drop_column) {
    const auto it = std::find(table.header.begin(), table.header.end(), *drop_column);
    if (it != table.header.end()) drop = static_cast<std::size_t>(it - table.header.begin());
  }
  MatrixCsv out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (!drop || c != *drop) out.header.push_back(table.header[c]);
  }
  const auto d = static_cast<Eigen::Index>(drop ? width - 1 : width);
  const std::size_t first_data_line = table.header.empty() ? 1 : 2;
  out.x.resize(d, static_cast<Eigen::Index>(table.rows.size()));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = "row " + std::to_string(r + first_data_line);
    if (row.size() != width) {
      fail(ErrorKind::InvalidInput, where + ": expected " + std::to_string(width) + " fields, got " +
                                        std::to_string(row.size()));
    }
    Eigen::Index feature = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (drop && c == *drop) continue;
      if (is_missing(row[c])) {
        fail(ErrorKind::InvalidInput, where + ": missing value in column " + std::to_string(c + 1));
      }
      const auto value = parse_number(row[c]);
      if (!value || !std::isfinite(*value)) {
        fail(ErrorKind::InvalidInput, where + ": non-numeric value '" + row[c] + "'");
      }
      out.x(feature++, static_cast<Eigen::Index>(r)) = *value;
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::vector<std::string> numbered_header(const std::string& prefix, Eigen::Index count) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

void write_matrix_csv(std::ostream& out, const Matrix& samples, const std::vector<std::string>& header) {
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (Eigen::Index j = 0; j < samples.cols(); ++j) {
    for (Eigen::Index i = 0; i < samples.rows(); ++i) out << (i ? "," : "") << format_double(samples(i, j));
    out << '\n';
  }
}

void write_dataset_csv(std::ostream& out, const Dataset& ds) {
  auto header = numbered_header("x", ds.x.rows());
  header.push_back("label");
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (Eigen::Index j = 0; j < ds.x.cols(); ++j) {
    for (Eigen::Index i = 0; i < ds.x.rows(); ++i) out << format_double(ds.x(i, j)) << ',';
    out << format_double(ds.y.values[static_cast<std::size_t>(j)]) << '\n';
  }
}

}  // namespace rda
