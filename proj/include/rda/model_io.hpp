#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "rda/core.hpp"
#include "rda/dual.hpp"
#include "rda/kernel_rda.hpp"

namespace rda {

inline constexpr const char* kModelFormat = "rda-model/1";

using AnyModel = std::variant<RdaModel, DualRdaModel, KernelRdaModel>;

// "primal", "dual", "kernel", "kernel-pca" or "kernel-spca".
std::string variant_name(const AnyModel& model);
Eigen::Index model_input_dim(const AnyModel& model);
Eigen::Index model_dims(const AnyModel& model);

// JSON document; matrices are {rows, cols, data} with data in row-major order.
void save_model(std::ostream& out, const AnyModel& model);
AnyModel load_model(std::istream& in);
void save_model_file(const std::string& path, const AnyModel& model);
AnyModel load_model_file(const std::string& path);

Matrix transform(const AnyModel& model, const DataMatrix& x);
// Refuses kernel models.
Matrix reconstruct_any(const AnyModel& model, const DataMatrix& x);

}  // namespace rda
