#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rda/datasets.hpp"
#include "rda/types.hpp"

namespace rda {

enum class LabelTask { Auto, Classification, Regression };

LabelTask parse_label_task(const std::string& name);

struct CsvReadOptions {
  // Column name, or a 0-based index (negative counts from the end). Unset
  // selects a column named "label", else the last column.
  std::optional<std::string> label_column;
  // Auto: categorical when every label is integral or non-numeric.
  LabelTask task = LabelTask::Auto;
};

struct CsvTable {
  std::vector<std::string> header;  // empty when the file has none
  std::vector<std::vector<std::string>> rows;
};

// Rows are samples, fields are comma-separated. A first row with any
// non-numeric field is treated as a header.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

Dataset dataset_from_table(const CsvTable& table, const CsvReadOptions& opts = {});
Dataset read_dataset_csv(const std::string& path, const CsvReadOptions& opts = {});

// Feature-only matrix (d x n). `drop_column` names a column to ignore, e.g.
// the label column of a dataset file.
struct MatrixCsv {
  DataMatrix x;
  std::vector<std::string> header;
};
MatrixCsv matrix_from_table(const CsvTable& table, const std::optional<std::string>& drop_column);

// Shortest round-trip decimal representation.
std::string format_double(double v);

void write_dataset_csv(std::ostream& out, const Dataset& ds);
// One row per column of `samples`, with the given header.
void write_matrix_csv(std::ostream& out, const Matrix& samples, const std::vector<std::string>& header);
std::vector<std::string> numbered_header(const std::string& prefix, Eigen::Index count);

}  // namespace rda
