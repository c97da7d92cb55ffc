#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rda/csv.hpp"
#include "rda/error.hpp"
#include "rda/model_io.hpp"

using namespace rda;

namespace {

CsvTable parse(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

AnyModel roundtrip(const AnyModel& model) {
  std::stringstream buf;
  save_model(buf, model);
  return load_model(buf);
}

}  // namespace

TEST(Csv, HeaderDetection) {
  EXPECT_EQ(parse("a,b,label\n1,2,0\n").header, (std::vector<std::string>{"a", "b", "label"}));
  const CsvTable t = parse("1,2,0\n3,4,1\n");
  EXPECT_TRUE(t.header.empty());
  EXPECT_EQ(t.rows.size(), 2u);
}

TEST(Csv, LabelColumnByNameIndexAndDefault) {
  const CsvTable t = parse("label,x1,x2\nb,1,2\na,3,4\nb,5,6\n");
  const Dataset named = dataset_from_table(t);
  EXPECT_EQ(named.x.rows(), 2);
  EXPECT_EQ(named.x(1, 2), 6.0);
  // class names map to sorted ids
  EXPECT_EQ(named.y.values, (std::vector<double>{1, 0, 1}));

  CsvReadOptions by_index;
  by_index.label_column = "-1";
  const CsvTable numeric = parse("label,x1,x2\n7,1,2\n8,3,4\n9,5,6\n");
  const Dataset last = dataset_from_table(numeric, by_index);
  EXPECT_EQ(last.x.rows(), 2);
  EXPECT_EQ(last.x(0, 1), 8.0);
  EXPECT_EQ(last.y.values, (std::vector<double>{2, 4, 6}));
  by_index.label_column = "0";
  EXPECT_EQ(dataset_from_table(numeric, by_index).y.values, (std::vector<double>{7, 8, 9}));

  const Dataset headerless = dataset_from_table(parse("1,2,0\n3,4,1\n"));
  EXPECT_EQ(headerless.y.values, (std::vector<double>{0, 1}));
  EXPECT_TRUE(headerless.y.is_categorical());
}

TEST(Csv, TaskInference) {
  const CsvTable t = parse("x,y\n1,0.5\n2,1.5\n");
  EXPECT_FALSE(dataset_from_table(t).y.is_categorical());
  CsvReadOptions cls;
  cls.task = LabelTask::Classification;
  EXPECT_THROW(dataset_from_table(t, cls), Error);
  CsvReadOptions reg;
  reg.task = LabelTask::Regression;
  EXPECT_FALSE(dataset_from_table(parse("x,y\n1,0\n2,1\n"), reg).y.is_categorical());
}

TEST(Csv, MissingValueReportsRow) {
  try {
    dataset_from_table(parse("a,b,label\n1,2,0\n3,,1\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(dataset_from_table(parse("a,b,label\n1,x,0\n3,4,1\n")), Error);
}

TEST(Csv, DatasetRoundTrip) {
  Rng rng(1);
  Dataset ds;
  ds.x = oracle::random_matrix(3, 7, rng);
  ds.y = oracle::random_classes(7, 3, rng);
  std::stringstream buf;
  write_dataset_csv(buf, ds);
  const Dataset back = dataset_from_table(read_csv(buf));
  EXPECT_EQ(back.x, ds.x);
  EXPECT_EQ(back.y.values, ds.y.values);
}

TEST(Csv, MatrixDropColumn) {
  const MatrixCsv m = matrix_from_table(parse("x1,x2,label\n1,2,0\n3,4,1\n"), std::string("label"));
  EXPECT_EQ(m.x.rows(), 2);
  EXPECT_EQ(m.x(0, 1), 3.0);
  EXPECT_EQ(m.header, (std::vector<std::string>{"x1", "x2"}));
}

TEST(Csv, FormatDoubleRoundTrips) {
  for (double v : {0.1, -1e-300, 3.141592653589793, 2.0, 1e22}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(numbered_header("e", 3), (std::vector<std::string>{"e1", "e2", "e3"}));
}

TEST(ModelIo, PrimalRoundTrip) {
  Rng rng(2);
  const Matrix x = oracle::random_matrix(4, 15, rng);
  const auto y = oracle::random_classes(15, 3, rng);
  RoweisConfig cfg;
  cfg.r1 = 0.5;
  cfg.r2 = 0.5;
  cfg.dims = 2;
  const AnyModel model = fit(x, y, cfg);
  const AnyModel back = roundtrip(model);
  EXPECT_EQ(variant_name(back), "primal");
  EXPECT_EQ(transform(back, x), transform(model, x));
  EXPECT_EQ(reconstruct_any(back, x), reconstruct_any(model, x));
  EXPECT_EQ(std::get<RdaModel>(back).config.r2, 0.5);
}

TEST(ModelIo, DualRoundTrip) {
  Rng rng(3);
  const Matrix x = oracle::random_matrix(30, 8, rng);
  const auto y = oracle::random_classes(8, 2, rng);
  DualConfig cfg;
  cfg.r1 = 1.0;
  const AnyModel model = fit_dual(x, y, cfg);
  const AnyModel back = roundtrip(model);
  EXPECT_EQ(variant_name(back), "dual");
  EXPECT_EQ(transform(back, x), project_dual(std::get<DualRdaModel>(model), x));
}

TEST(ModelIo, KernelRoundTrips) {
  Rng rng(4);
  const Matrix x = oracle::random_matrix(2, 20, rng);
  const auto y = oracle::random_classes(20, 2, rng);
  const Matrix t = oracle::random_matrix(2, 5, rng);
  RoweisConfig cfg;
  cfg.r1 = 1;
  cfg.r2 = 1;
  const std::vector<AnyModel> models = {fit_direct(x, y, cfg, KernelSpec::rbf()),
                                        fit_kernel_pca(x, KernelSpec::polynomial(2), 2),
                                        fit_kernel_spca(x, y, KernelSpec::rbf(0.3), std::nullopt, 1)};
  const std::vector<std::string> names = {"kernel", "kernel-pca", "kernel-spca"};
  for (std::size_t i = 0; i < models.size(); ++i) {
    const AnyModel back = roundtrip(models[i]);
    EXPECT_EQ(variant_name(back), names[i]);
    EXPECT_EQ(transform(back, t), project_kernel(std::get<KernelRdaModel>(models[i]), t)) << names[i];
    try {
      reconstruct_any(back, t);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
      EXPECT_NE(std::string(e.what()).find("Phi(X)"), std::string::npos);
    }
  }
}

TEST(ModelIo, RejectsForeignDocuments) {
  std::istringstream bad_json("{not json");
  EXPECT_THROW(load_model(bad_json), Error);
  std::istringstream wrong_format(R"({"format": "something-else"})");
  EXPECT_THROW(load_model(wrong_format), Error);
}

TEST(ModelIo, TransformChecksDimension) {
  Rng rng(5);
  const Matrix x = oracle::random_matrix(3, 10, rng);
  RoweisConfig cfg;
  cfg.dims = 2;
  const AnyModel model = fit(x, {}, cfg);
  EXPECT_EQ(model_input_dim(model), 3);
  EXPECT_EQ(model_dims(model), 2);
  EXPECT_THROW(transform(model, Matrix::Zero(4, 2)), Error);
}
