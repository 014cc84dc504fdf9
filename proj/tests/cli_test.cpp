#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ltridp/cli.hpp"
#include "ltridp/dataset.hpp"
#include "ltridp/eval.hpp"
#include "ltridp/model_file.hpp"
#include "ltridp/text_format.hpp"
#include "support/png_writer.hpp"
#include "support/synthetic.hpp"

namespace ltridp {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::make_temp_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
  }

  fs::path path(const std::string& name) const { return dir_ / name; }

  // 20 noise (bag) and 20 smooth (nobag) 32x32 textures.
  fs::path make_dataset(int per_class = 20) {
    return testing::write_two_texture_dataset(dir_ / "data", per_class, 32, 11).manifest;
  }

  fs::path write_manifest(const std::string& name, const std::string& text) {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  fs::path dir_;
};

TEST_F(CliTest, ExtractCompatModeGives150Dims) {
  const fs::path data = path("four");
  fs::create_directories(data);
  SeededRng rng(1);
  std::string manifest;
  for (int i = 0; i < 4; ++i) {
    save_pgm(testing::random_image(40, 40, rng), data / (std::to_string(i) + ".pgm"));
    manifest += std::to_string(i) + ".pgm," + (i % 2 ? "bag" : "nobag") + "\n";
  }
  std::ofstream(data / "manifest.csv") << manifest;

  const CliResult r = run({"--compat150", "extract", "--manifest", (data / "manifest.csv").string(), "--out",
                     path("store.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const FeatureStore store = load_store(path("store.csv"));
  EXPECT_EQ(store.dim(), 150);
  ASSERT_EQ(store.rows.size(), 4u);
  for (const auto& row : store.rows) EXPECT_EQ(row.values.size(), 150u);
  EXPECT_TRUE(store.config.resize);
}

TEST_F(CliTest, ExtractMinimalImageWithoutResize) {
  save_pgm(GrayImage(3, 3, {5, 3, 8, 9, 6, 2, 4, 1, 7}), path("patch.pgm"));
  const auto manifest = write_manifest("m.csv", "patch.pgm,bag\n");
  const CliResult r = run({"extract", "--manifest", manifest.string(), "--out", path("s.csv").string(), "--no-resize"});
  ASSERT_EQ(r.code, 0) << r.err;
  const FeatureStore store = load_store(path("s.csv"));
  ASSERT_EQ(store.rows.size(), 1u);
  EXPECT_EQ(store.rows[0].values.size(), 768u);
}

TEST_F(CliTest, ExtractErrors) {
  const auto empty = write_manifest("empty.csv", "path,label\n");
  EXPECT_EQ(run({"extract", "--manifest", empty.string(), "--out", path("s.csv").string()}).code, 2);

  const auto missing = write_manifest("missing.csv", "nothere.pgm,bag\n");
  const CliResult r = run({"extract", "--manifest", missing.string(), "--out", path("s.csv").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("nothere.pgm"), std::string::npos);

  EXPECT_EQ(run({"extract", "--manifest", path("no_such.csv").string(), "--out", "x"}).code, 2);
  EXPECT_EQ(run({"extract", "--manifest", empty.string()}).code, 1);
  EXPECT_EQ(run({"--bins", "77", "extract", "--manifest", empty.string(), "--out", "x"}).code, 1);
}

TEST_F(CliTest, ExtractSkipsUnreadableRowsWithWarning) {
  save_pgm(GrayImage(8, 8, 3), path("ok.pgm"));
  const auto manifest = write_manifest("m.csv", "ok.pgm,bag\nbroken.pgm,nobag\n");
  const CliResult r = run({"extract", "--manifest", manifest.string(), "--out", path("s.csv").string(), "--no-resize"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_EQ(load_store(path("s.csv")).rows.size(), 1u);
}

TEST_F(CliTest, ExtractIsIndependentOfJobs) {
  const fs::path manifest = make_dataset(10);
  ASSERT_EQ(run({"--jobs", "1", "extract", "--manifest", manifest.string(), "--out", path("a.csv").string(),
                 "--size", "48"}).code, 0);
  ASSERT_EQ(run({"--jobs", "4", "extract", "--manifest", manifest.string(), "--out", path("b.csv").string(),
                 "--size", "48"}).code, 0);
  EXPECT_EQ(testing::read_file_text(path("a.csv")), testing::read_file_text(path("b.csv")));
}

TEST_F(CliTest, TrainEvalPredictRoundTrip) {
  const fs::path manifest = make_dataset();
  ASSERT_EQ(run({"extract", "--manifest", manifest.string(), "--out", path("store.csv").string(), "--no-resize"}).code, 0);

  const CliResult t1 = run({"train", "--store", path("store.csv").string(), "--model", path("m1.json").string(),
                      "--kernel", "linear", "--validation", "split70", "--report", path("r1.json").string(),
                      "--roc", path("roc.csv").string()});
  ASSERT_EQ(t1.code, 0) << t1.err;
  const auto report = nlohmann::json::parse(testing::read_file_text(path("r1.json")));
  EXPECT_EQ(report["accuracy"], 1.0);
  EXPECT_EQ(report["validation"], "split70");
  EXPECT_EQ(testing::read_file_text(path("roc.csv")).rfind("fpr,tpr\n", 0), 0u);

  const CliResult t2 = run({"train", "--store", path("store.csv").string(), "--model", path("m2.json").string(),
                      "--kernel", "linear", "--validation", "split70"});
  ASSERT_EQ(t2.code, 0);
  EXPECT_EQ(testing::read_file_text(path("m1.json")), testing::read_file_text(path("m2.json")));

  // Model trained on everything evaluates perfectly on its own store.
  ASSERT_EQ(run({"train", "--store", path("store.csv").string(), "--model", path("all.json").string(),
                 "--validation", "none"}).code, 0);
  const CliResult e = run({"eval", "--store", path("store.csv").string(), "--model", path("all.json").string(),
                     "--report", path("eval.json").string()});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_NE(e.out.find("actual bag"), std::string::npos);
  const auto eval = nlohmann::json::parse(testing::read_file_text(path("eval.json")));
  EXPECT_EQ(eval["accuracy"], 1.0);
  const ConfusionMatrix cm{eval["confusion"]["tp"], eval["confusion"]["fp"], eval["confusion"]["tn"],
                           eval["confusion"]["fn"]};
  EXPECT_EQ(eval["accuracy"].get<double>(), metrics(cm).accuracy);

  // Reloaded model reproduces in-memory decision values on every row.
  const FeatureStore store = load_store(path("store.csv"));
  const ModelFile loaded = load_model_file(path("all.json"));
  TrainerConfig config;
  const SvmModel in_memory = train(store.samples(), config);
  for (const auto& row : store.rows) {
    EXPECT_EQ(decision_value(in_memory, row.values), decision_value(loaded.model, row.values));
  }

  const std::string positive = (manifest.parent_path() / "images/noise_0.pgm").string();
  const CliResult p1 = run({"predict", "--image", positive, "--model", path("all.json").string()});
  ASSERT_EQ(p1.code, 0) << p1.err;
  EXPECT_EQ(p1.out.rfind("+1 ", 0), 0u);
  EXPECT_GE(parse_double(p1.out.substr(3, p1.out.size() - 4)), 0.0);
  EXPECT_EQ(run({"predict", "--image", positive, "--model", path("all.json").string()}).out, p1.out);

  EXPECT_EQ(run({"predict", "--image", path("nope.pgm").string(), "--model", path("all.json").string()}).code, 2);
  EXPECT_EQ(run({"predict", "--image", positive, "--model", path("nope.json").string()}).code, 2);
}

TEST_F(CliTest, PredictUsesBinsRecordedInModel) {
  const fs::path manifest = make_dataset(8);
  ASSERT_EQ(run({"--bins", "50", "extract", "--manifest", manifest.string(), "--out", path("s.csv").string(),
                 "--no-resize"}).code, 0);
  ASSERT_EQ(run({"train", "--store", path("s.csv").string(), "--model", path("m.json").string(),
                 "--validation", "none"}).code, 0);
  const ModelFile file = load_model_file(path("m.json"));
  EXPECT_EQ(file.pipeline.bins, Bins::Compat);
  EXPECT_EQ(file.model.feature_dim(), 150u);

  const std::string image = (manifest.parent_path() / "images/smooth_3.pgm").string();
  // --bins 256 on the command line must not override the model's 50 bins.
  const CliResult p = run({"--bins", "256", "predict", "--image", image, "--model", path("m.json").string()});
  ASSERT_EQ(p.code, 0) << p.err;
  const double expected = decision_value(file.model, featurize(load_image(image), file.pipeline));
  const std::string sign = expected >= 0.0 ? "+1" : "-1";
  EXPECT_EQ(p.out, sign + " " + format_double(expected) + "\n");
}

TEST_F(CliTest, TrainErrorCodes) {
  const fs::path manifest = make_dataset(5);
  ASSERT_EQ(run({"extract", "--manifest", manifest.string(), "--out", path("s.csv").string(), "--no-resize"}).code, 0);

  // Keep 9 rows: 10-fold needs a test sample per fold.
  FeatureStore store = load_store(path("s.csv"));
  store.rows.resize(9);
  save_store(store, path("nine.csv"));
  const CliResult cv = run({"train", "--store", path("nine.csv").string(), "--model", path("m.json").string(),
                      "--validation", "cv10"});
  EXPECT_EQ(cv.code, 3);
  EXPECT_NE(cv.err.find("at least 10 samples"), std::string::npos);

  FeatureStore single = load_store(path("s.csv"));
  std::erase_if(single.rows, [](const FeatureRow& r) { return r.label == Label::Bag; });
  save_store(single, path("single.csv"));
  EXPECT_EQ(run({"train", "--store", path("single.csv").string(), "--model", path("m.json").string(),
                 "--validation", "none"}).code, 3);
}

TEST_F(CliTest, CrossValidationReport) {
  const fs::path manifest = make_dataset(10);
  ASSERT_EQ(run({"extract", "--manifest", manifest.string(), "--out", path("s.csv").string(), "--no-resize"}).code, 0);
  const CliResult r = run({"train", "--store", path("s.csv").string(), "--model", path("m.json").string(),
                     "--validation", "cv10", "--kernel", "quadratic", "--report", path("r.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(testing::read_file_text(path("r.json")));
  EXPECT_EQ(report["folds"].size(), 10u);
  EXPECT_EQ(report["kernel"], "quadratic");
  EXPECT_EQ(report["confusion"]["tp"].get<int>() + report["confusion"]["fn"].get<int>(), 10);
}

TEST_F(CliTest, EvalRejectsDimensionMismatch) {
  const fs::path manifest = make_dataset(6);
  ASSERT_EQ(run({"extract", "--manifest", manifest.string(), "--out", path("s768.csv").string(), "--no-resize"}).code, 0);
  ASSERT_EQ(run({"--compat150", "extract", "--manifest", manifest.string(), "--out", path("s150.csv").string(),
                 "--no-resize"}).code, 0);
  ASSERT_EQ(run({"train", "--store", path("s150.csv").string(), "--model", path("m150.json").string(),
                 "--validation", "none"}).code, 0);
  const CliResult r = run({"eval", "--store", path("s768.csv").string(), "--model", path("m150.json").string()});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("768"), std::string::npos);
  EXPECT_NE(r.err.find("150"), std::string::npos);
}

TEST_F(CliTest, SeedFromEnvironmentIsOverriddenByFlag) {
  const fs::path manifest = make_dataset(6);
  ASSERT_EQ(run({"extract", "--manifest", manifest.string(), "--out", path("s.csv").string(), "--no-resize"}).code, 0);
  ::setenv("LTRIDP_SEED", "7", 1);
  ASSERT_EQ(run({"train", "--store", path("s.csv").string(), "--model", path("m.json").string(), "--report",
                 path("env.json").string()}).code, 0);
  ASSERT_EQ(run({"--seed", "9", "train", "--store", path("s.csv").string(), "--model", path("m.json").string(),
                 "--report", path("flag.json").string()}).code, 0);
  ::unsetenv("LTRIDP_SEED");
  EXPECT_EQ(nlohmann::json::parse(testing::read_file_text(path("env.json")))["seed"], 7);
  EXPECT_EQ(nlohmann::json::parse(testing::read_file_text(path("flag.json")))["seed"], 9);
}

TEST_F(CliTest, InspectWorkedPatch) {
  save_pgm(GrayImage(3, 3, {5, 3, 8, 9, 6, 2, 4, 1, 7}), path("patch.pgm"));
  const CliResult r = run({"inspect", "--image", path("patch.pgm").string(), "--out-dir", path("out").string(),
                     "--no-resize", "--no-equalize"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load_image(path("out/pattern2.pgm")), GrayImage(1, 1, {65}));
  EXPECT_EQ(load_image(path("out/pattern1.pgm")), GrayImage(1, 1, {0}));
  EXPECT_EQ(load_image(path("out/magnitude.pgm")), GrayImage(1, 1, {64}));
  const std::string hist = testing::read_file_text(path("out/histogram.csv"));
  EXPECT_EQ(hist.rfind("level,count\n0,0\n", 0), 0u);
  EXPECT_NE(hist.find("\n9,1\n"), std::string::npos);
}

TEST_F(CliTest, InspectOutputsAreConsistent) {
  SeededRng rng(12);
  const GrayImage tex = testing::random_image(30, 20, rng);
  testing::write_png(path("tex.png"), 30, 20, 1, std::vector<std::uint8_t>(tex.pixels().begin(), tex.pixels().end()));
  const CliResult r = run({"--compat150", "inspect", "--image", path("tex.png").string(), "--out-dir",
                     path("o").string(), "--size", "24"});
  ASSERT_EQ(r.code, 0) << r.err;

  FeatureVector rebuilt;
  for (const char* name : {"pattern1.pgm", "pattern2.pgm", "magnitude.pgm"}) {
    const GrayImage plane = load_image(path("o") / name);
    EXPECT_EQ(plane.width(), 22);
    const CodeGrid grid{plane.width(), plane.height(),
                        std::vector<std::uint8_t>(plane.pixels().begin(), plane.pixels().end())};
    const auto block = histogram_of_codes(grid, Bins::Compat);
    rebuilt.insert(rebuilt.end(), block.begin(), block.end());
  }
  std::istringstream csv(testing::read_file_text(path("o/feature.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "index,value");
  FeatureVector stored;
  while (std::getline(csv, line)) stored.push_back(parse_double(line.substr(line.find(',') + 1)));
  EXPECT_EQ(stored, rebuilt);

  save_pgm(GrayImage(10, 10, 90), path("flat.pgm"));
  ASSERT_EQ(run({"inspect", "--image", path("flat.pgm").string(), "--out-dir", path("f").string(),
                 "--no-resize"}).code, 0);
  const GrayImage mag = load_image(path("f/magnitude.pgm"));
  for (const auto v : mag.pixels()) EXPECT_EQ(v, 255);
}

TEST_F(CliTest, InspectUnwritableDirectory) {
  save_pgm(GrayImage(5, 5, 1), path("p.pgm"));
  std::ofstream(path("blocker")) << "file";
  EXPECT_EQ(run({"inspect", "--image", path("p.pgm").string(), "--out-dir", (path("blocker") / "sub").string()}).code, 2);
}

TEST_F(CliTest, EqualizeWritesImageAndHistogram) {
  save_pgm(GrayImage(2, 2, {0, 64, 128, 255}), path("in.pgm"));
  const CliResult r = run({"equalize", "--image", path("in.pgm").string(), "--out", path("eq.pgm").string(),
                     "--histogram", path("h.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load_image(path("eq.pgm")), GrayImage(2, 2, {0, 85, 170, 255}));
  const std::string hist = testing::read_file_text(path("h.csv"));
  EXPECT_NE(hist.find("\n85,1\n"), std::string::npos);
  EXPECT_NE(hist.find("\n170,1\n"), std::string::npos);
}

TEST_F(CliTest, HelpAndUsage) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"train", "--store", "x"}).code, 1);
}

}  // namespace
}  // namespace ltridp
