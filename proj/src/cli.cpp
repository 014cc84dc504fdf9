#include "ltridp/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "ltridp/dataset.hpp"
#include "ltridp/errors.hpp"
#include "ltridp/eval.hpp"
#include "ltridp/model_file.hpp"
#include "ltridp/preprocess.hpp"
#include "ltridp/text_format.hpp"

namespace ltridp::cli {

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 42;
  int bins = 256;
  bool compat150 = false;
  int jobs = 0;

  Bins resolved_bins() const { return compat150 ? Bins::Compat : bins_from_count(bins); }
  int resolved_jobs() const {
    if (jobs > 0) return jobs;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
};

struct PreprocessFlags {
  bool no_resize = false;
  bool no_equalize = false;
  bool normalize = false;
  int size = kCanonicalSize;
  std::string descriptor = "ltridp";

  PipelineConfig config(Bins bins) const {
    PipelineConfig c;
    c.descriptor = descriptor_from_name(descriptor);
    c.bins = bins;
    c.resize = !no_resize;
    c.resize_width = size;
    c.resize_height = size;
    c.normalize = normalize;
    c.equalize = !no_equalize;
    return c;
  }
};

void add_preprocess_flags(CLI::App* cmd, PreprocessFlags& flags, bool with_descriptor) {
  cmd->add_flag("--no-resize", flags.no_resize, "Keep the source resolution");
  cmd->add_flag("--no-equalize", flags.no_equalize, "Skip histogram equalization");
  cmd->add_flag("--normalize", flags.normalize, "Min-max normalize before equalization");
  cmd->add_option("--size", flags.size, "Square resize target")
      ->check(CLI::Range(3, 1 << 14));
  if (with_descriptor) {
    cmd->add_option("--descriptor", flags.descriptor, "Feature descriptor")
        ->check(CLI::IsMember({"ltridp", "lbp"}));
  }
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void print_summary(std::ostream& out, const EvalReport& r) {
  out << confusion_table(r.confusion);
  out << "accuracy " << format_double(r.accuracy) << "  precision " << format_double(r.precision)
      << "  recall " << format_double(r.recall) << "  specificity " << format_double(r.specificity)
      << "  fpr " << format_double(r.fpr) << "  auc " << format_double(r.auc) << "\n";
}

void emit_report(const nlohmann::json& report, const std::vector<RocPoint>& roc,
                 const std::string& report_path, const std::string& roc_path) {
  if (!report_path.empty()) write_text_file(report_path, report.dump(2) + "\n");
  if (!roc_path.empty()) write_text_file(roc_path, roc_to_csv(roc));
}

std::string histogram_csv(const GrayImage& img) {
  const IntensityHistogram hist = compute_histogram(img);
  std::string out = "level,count\n";
  for (int k = 0; k < kGrayLevels; ++k) {
    out += std::to_string(k) + "," + std::to_string(hist.counts[static_cast<std::size_t>(k)]) + "\n";
  }
  return out;
}

std::string feature_csv(const FeatureVector& feature) {
  std::string out = "index,value\n";
  for (std::size_t i = 0; i < feature.size(); ++i) {
    out += std::to_string(i) + "," + format_double(feature[i]) + "\n";
  }
  return out;
}

// --- subcommands -----------------------------------------------------------

struct ExtractArgs {
  std::string manifest;
  std::string out;
  PreprocessFlags pre;
};

int cmd_extract(const ExtractArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const DatasetManifest manifest = read_manifest(a.manifest);
  if (manifest.entries.empty()) {
    err << "error: manifest '" << a.manifest << "' has no entries\n";
    return kInputError;
  }
  const PipelineConfig config = a.pre.config(g.resolved_bins());
  ExtractionResult result = extract_manifest(manifest, config, g.resolved_jobs());
  for (const auto& f : result.failures) err << "warning: skipped '" << f.path << "': " << f.message << "\n";
  if (result.store.rows.empty()) {
    err << "error: no image in the manifest could be processed\n";
    return kInputError;
  }
  save_store(result.store, a.out);
  out << "extracted " << result.store.rows.size() << " of " << manifest.entries.size()
      << " images, dim " << result.store.dim() << " -> " << a.out << "\n";
  return kOk;
}

struct TrainArgs {
  std::string store;
  std::string model;
  std::string kernel = "gaussian";
  double c = 1.0;
  double gamma = 0.0;
  double coef0 = 1.0;
  double tol = 1e-3;
  int max_passes = 10;
  std::uint64_t epochs = 0;
  bool force_smo = false;
  std::string validation = "split70";
  std::string report;
  std::string roc;
};

int cmd_train(const TrainArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream&) {
  const FeatureStore store = load_store(a.store);
  const SampleSet samples = store.samples();

  TrainerConfig config;
  config.kernel = kernel_from_name(a.kernel);
  config.gamma = a.gamma;
  config.coef0 = a.coef0;
  config.force_smo = a.force_smo;
  config.hyper = {a.c, a.tol, a.max_passes, a.epochs, g.seed};

  ModelFile file;
  file.pipeline = store.config;
  nlohmann::json report;
  std::vector<RocPoint> roc;
  EvalReport summary;
  if (a.validation == "split70") {
    const TrainTestSplit split = split_70_30(samples, g.seed);
    file.model = train(split.train, config);
    summary = evaluate(score_samples(file.model, split.test));
    report = report_to_json(summary);
    roc = summary.roc;
  } else if (a.validation == "cv10") {
    const CrossValidationResult cv = cross_validate(samples, 10, config, g.seed);
    file.model = train(samples, config);
    summary = cv.mean;
    report = cross_validation_to_json(cv);
    roc = cv.pooled.points;
  } else {
    file.model = train(samples, config);
    summary = evaluate(score_samples(file.model, samples));
    report = report_to_json(summary);
    roc = summary.roc;
  }
  report["validation"] = a.validation;
  report["kernel"] = kernel_name(file.model.kernel.kind);
  report["solver"] = solver_name(file.model.solver);
  report["seed"] = g.seed;

  save_model_file(file, a.model);
  emit_report(report, roc, a.report, a.roc);
  out << "validation " << a.validation << ", kernel " << kernel_name(file.model.kernel.kind)
      << ", solver " << solver_name(file.model.solver) << "\n";
  print_summary(out, summary);
  return kOk;
}

struct EvalArgs {
  std::string store;
  std::string model;
  std::string report;
  std::string roc;
};

int cmd_eval(const EvalArgs& a, const GlobalOptions&, std::ostream& out, std::ostream& err) {
  const FeatureStore store = load_store(a.store);
  const ModelFile file = load_model_file(a.model);
  if (store.dim() != file.pipeline.dim() || store.config.descriptor != file.pipeline.descriptor ||
      store.config.bins != file.pipeline.bins) {
    err << "error: feature store dim " << store.dim() << " (" << descriptor_name(store.config.descriptor)
        << ", bins " << bin_count(store.config.bins) << ") does not match model dim "
        << file.pipeline.dim() << " (" << descriptor_name(file.pipeline.descriptor) << ", bins "
        << bin_count(file.pipeline.bins) << ")\n";
    return kMismatch;
  }
  if (!(store.config == file.pipeline)) {
    err << "warning: feature store preprocessing differs from the model's\n";
  }
  const EvalReport report = evaluate(score_samples(file.model, store.samples()));
  emit_report(report_to_json(report), report.roc, a.report, a.roc);
  print_summary(out, report);
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";
  return kOk;
}

struct PredictArgs {
  std::string image;
  std::string model;
};

int cmd_predict(const PredictArgs& a, const GlobalOptions&, std::ostream& out, std::ostream&) {
  const ModelFile file = load_model_file(a.model);
  const FeatureVector feature = featurize(load_image(a.image), file.pipeline);
  const double value = decision_value(file.model, feature);
  out << (value >= 0.0 ? "+1" : "-1") << " " << format_double(value) << "\n";
  return kOk;
}

struct InspectArgs {
  std::string image;
  std::string out_dir;
  PreprocessFlags pre;
};

int cmd_inspect(const InspectArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream&) {
  PipelineConfig config = a.pre.config(g.resolved_bins());
  config.descriptor = DescriptorKind::LTriDP;
  const GrayImage img = preprocess(load_image(a.image), config);
  const CodeMaps maps = code_maps(img);

  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + a.out_dir + "'");
  save_pgm(maps.pattern1.to_image(), dir / "pattern1.pgm");
  save_pgm(maps.pattern2.to_image(), dir / "pattern2.pgm");
  save_pgm(maps.magnitude.to_image(), dir / "magnitude.pgm");
  write_text_file(dir / "feature.csv", feature_csv(extract_feature(img, config.bins)));
  write_text_file(dir / "histogram.csv", histogram_csv(img));
  out << "wrote code maps (" << maps.pattern1.width << "x" << maps.pattern1.height << ") to "
      << a.out_dir << "\n";
  return kOk;
}

struct EqualizeArgs {
  std::string image;
  std::string out;
  std::string histogram;
};

int cmd_equalize(const EqualizeArgs& a, const GlobalOptions&, std::ostream& out, std::ostream&) {
  const GrayImage result = equalize(load_image(a.image));
  save_pgm(result, a.out);
  if (!a.histogram.empty()) write_text_file(a.histogram, histogram_csv(result));
  out << "equalized " << result.width() << "x" << result.height() << " -> " << a.out << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"LTriDP texture classification toolkit", "ltridp"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for splits and solvers")->envname("LTRIDP_SEED");
  app.add_option("--bins", g.bins, "Histogram bins per code map")->check(CLI::IsMember({256, 50}));
  app.add_flag("--compat150", g.compat150, "50 bins per map (150-dimensional LTriDP features)");
  app.add_option("--jobs", g.jobs, "Extraction worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  ExtractArgs extract;
  auto* c_extract = app.add_subcommand("extract", "Extract features for a manifest into a feature store");
  c_extract->add_option("--manifest", extract.manifest, "CSV of path,label")->required();
  c_extract->add_option("--out", extract.out, "Feature store to write")->required();
  add_preprocess_flags(c_extract, extract.pre, true);

  TrainArgs train_args;
  auto* c_train = app.add_subcommand("train", "Train an SVM on a feature store");
  c_train->add_option("--store", train_args.store)->required();
  c_train->add_option("--model", train_args.model, "Model file to write")->required();
  c_train->add_option("--kernel", train_args.kernel)
      ->check(CLI::IsMember({"linear", "quadratic", "cubic", "gaussian"}));
  c_train->add_option("-C,--c", train_args.c, "Regularization")->check(CLI::PositiveNumber);
  c_train->add_option("--gamma", train_args.gamma, "Gaussian width (0 = 1/dim)")->check(CLI::NonNegativeNumber);
  c_train->add_option("--coef0", train_args.coef0, "Polynomial kernel offset");
  c_train->add_option("--tol", train_args.tol, "SMO KKT tolerance")->check(CLI::PositiveNumber);
  c_train->add_option("--max-passes", train_args.max_passes)->check(CLI::PositiveNumber);
  c_train->add_option("--epochs", train_args.epochs, "Primal solver steps (0 = 50 n)");
  c_train->add_flag("--smo", train_args.force_smo, "Use SMO for the linear kernel too");
  c_train->add_option("--validation", train_args.validation)
      ->check(CLI::IsMember({"split70", "cv10", "none"}));
  c_train->add_option("--report", train_args.report, "JSON report path");
  c_train->add_option("--roc", train_args.roc, "ROC CSV path");

  EvalArgs eval_args;
  auto* c_eval = app.add_subcommand("eval", "Evaluate a model on a feature store");
  c_eval->add_option("--store", eval_args.store)->required();
  c_eval->add_option("--model", eval_args.model)->required();
  c_eval->add_option("--report", eval_args.report, "JSON report path");
  c_eval->add_option("--roc", eval_args.roc, "ROC CSV path");

  PredictArgs predict_args;
  auto* c_predict = app.add_subcommand("predict", "Classify one image");
  c_predict->add_option("--image", predict_args.image)->required();
  c_predict->add_option("--model", predict_args.model)->required();

  InspectArgs inspect;
  auto* c_inspect = app.add_subcommand("inspect", "Dump the code maps and feature of one image");
  c_inspect->add_option("--image", inspect.image)->required();
  c_inspect->add_option("--out-dir", inspect.out_dir)->required();
  add_preprocess_flags(c_inspect, inspect.pre, false);

  EqualizeArgs eq;
  auto* c_equalize = app.add_subcommand("equalize", "Histogram-equalize one image");
  c_equalize->add_option("--image", eq.image)->required();
  c_equalize->add_option("--out", eq.out, "PGM output")->required();
  c_equalize->add_option("--histogram", eq.histogram, "level,count CSV of the output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (c_extract->parsed()) return cmd_extract(extract, g, out, err);
    if (c_train->parsed()) return cmd_train(train_args, g, out, err);
    if (c_eval->parsed()) return cmd_eval(eval_args, g, out, err);
    if (c_predict->parsed()) return cmd_predict(predict_args, g, out, err);
    if (c_inspect->parsed()) return cmd_inspect(inspect, g, out, err);
    if (c_equalize->parsed()) return cmd_equalize(eq, g, out, err);
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kMismatch;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kUsage;
}

}  // namespace ltridp::cli
