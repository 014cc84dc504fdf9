#include "ltridp/eval.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "ltridp/errors.hpp"
#include "ltridp/rng.hpp"
#include "ltridp/text_format.hpp"

namespace ltridp {

namespace {

double ratio(std::uint64_t num, std::uint64_t den, const char* name,
             std::vector<std::string>& warnings) {
  if (den == 0) {
    warnings.push_back(std::string(name) + ": zero denominator, reported as 0");
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

std::vector<std::size_t> shuffled_indices_of(const SampleSet& samples, Label label, SeededRng& rng) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].label == label) idx.push_back(i);
  }
  rng.shuffle(std::span<std::size_t>(idx));
  return idx;
}

SampleSet gather(const SampleSet& samples, std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end());
  SampleSet out;
  out.reserve(idx.size());
  for (const std::size_t i : idx) out.push_back(samples[i]);
  return out;
}

}  // namespace

EvalReport metrics(const ConfusionMatrix& cm) {
  EvalReport r;
  r.confusion = cm;
  r.accuracy = ratio(cm.tp + cm.tn, cm.total(), "accuracy", r.warnings);
  r.precision = ratio(cm.tp, cm.tp + cm.fp, "precision", r.warnings);
  r.recall = ratio(cm.tp, cm.tp + cm.fn, "recall", r.warnings);
  r.sensitivity = r.recall;
  r.specificity = ratio(cm.tn, cm.tn + cm.fp, "specificity", r.warnings);
  r.fpr = ratio(cm.fp, cm.fp + cm.tn, "fpr", r.warnings);
  return r;
}

ConfusionMatrix confusion_from_scores(std::span<const ScoredSample> scores) {
  ConfusionMatrix cm;
  for (const auto& s : scores) {
    const bool predicted_pos = s.score >= 0.0;
    if (s.label == Label::Bag) {
      ++(predicted_pos ? cm.tp : cm.fn);
    } else {
      ++(predicted_pos ? cm.fp : cm.tn);
    }
  }
  return cm;
}

RocCurve roc_curve(std::span<const ScoredSample> scores) {
  std::uint64_t positives = 0;
  for (const auto& s : scores) positives += s.label == Label::Bag;
  const std::uint64_t negatives = scores.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw DataError("ROC needs at least one positive and one negative sample");
  }

  std::vector<ScoredSample> sorted(scores.begin(), scores.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ScoredSample& a, const ScoredSample& b) { return a.score > b.score; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double threshold = sorted[i].score;
    for (; i < sorted.size() && sorted[i].score == threshold; ++i) {
      ++(sorted[i].label == Label::Bag ? tp : fp);
    }
    curve.points.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                            static_cast<double>(tp) / static_cast<double>(positives)});
  }
  if (curve.points.back() != RocPoint{1.0, 1.0}) curve.points.push_back({1.0, 1.0});

  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    const RocPoint& a = curve.points[k - 1];
    const RocPoint& b = curve.points[k];
    curve.auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  return curve;
}

EvalReport evaluate(std::span<const ScoredSample> scores) {
  EvalReport report = metrics(confusion_from_scores(scores));
  try {
    RocCurve curve = roc_curve(scores);
    report.roc = std::move(curve.points);
    report.auc = curve.auc;
  } catch (const DataError&) {
    report.warnings.emplace_back("roc: evaluation set has a single class, auc reported as 0");
  }
  return report;
}

std::vector<ScoredSample> score_samples(const SvmModel& model, const SampleSet& samples) {
  std::vector<ScoredSample> scores;
  scores.reserve(samples.size());
  for (const auto& s : samples) scores.push_back({decision_value(model, s.features), s.label});
  return scores;
}

TrainTestSplit split_70_30(const SampleSet& samples, std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (const Label label : {Label::Bag, Label::NoBag}) {
    const auto idx = shuffled_indices_of(samples, label, rng);
    if (idx.size() < 2) {
      throw DataError("70-30 split needs at least 2 samples of class '" +
                      std::string(label_name(label)) + "', got " + std::to_string(idx.size()));
    }
    const std::size_t n_train = idx.size() * 7 / 10;
    train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    test_idx.insert(test_idx.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
  }
  return {gather(samples, std::move(train_idx)), gather(samples, std::move(test_idx))};
}

std::vector<TrainTestSplit> kfold(const SampleSet& samples, int k, std::uint64_t seed) {
  if (k < 2) throw DataError("k-fold needs k >= 2");
  if (static_cast<std::size_t>(k) > samples.size()) {
    throw DataError(std::to_string(k) + "-fold cross-validation needs at least " +
                    std::to_string(k) + " samples so every fold has a test sample, got " +
                    std::to_string(samples.size()));
  }
  SeededRng rng(seed);
  std::vector<int> fold_of(samples.size(), 0);
  std::size_t counter = 0;
  for (const Label label : {Label::Bag, Label::NoBag}) {
    for (const std::size_t i : shuffled_indices_of(samples, label, rng)) {
      fold_of[i] = static_cast<int>(counter++ % static_cast<std::size_t>(k));
    }
  }
  std::vector<TrainTestSplit> folds(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (int f = 0; f < k; ++f) {
      (fold_of[i] == f ? folds[static_cast<std::size_t>(f)].test
                       : folds[static_cast<std::size_t>(f)].train)
          .push_back(samples[i]);
    }
  }
  return folds;
}

CrossValidationResult cross_validate(const SampleSet& samples, int k, const TrainerConfig& config,
                                     std::uint64_t seed) {
  CrossValidationResult result;
  std::vector<ScoredSample> pooled;
  for (const auto& fold : kfold(samples, k, seed)) {
    const SvmModel model = train(fold.train, config);
    const auto scores = score_samples(model, fold.test);
    pooled.insert(pooled.end(), scores.begin(), scores.end());
    result.folds.push_back(evaluate(scores));
  }

  EvalReport& mean = result.mean;
  const double n = static_cast<double>(result.folds.size());
  for (const auto& f : result.folds) {
    mean.accuracy += f.accuracy;
    mean.precision += f.precision;
    mean.recall += f.recall;
    mean.specificity += f.specificity;
    mean.sensitivity += f.sensitivity;
    mean.fpr += f.fpr;
    mean.auc += f.auc;
    mean.confusion.tp += f.confusion.tp;
    mean.confusion.fp += f.confusion.fp;
    mean.confusion.tn += f.confusion.tn;
    mean.confusion.fn += f.confusion.fn;
  }
  for (double* m : {&mean.accuracy, &mean.precision, &mean.recall, &mean.specificity, &mean.fpr, &mean.auc}) {
    *m /= n;
  }
  for (std::size_t f = 0; f < result.folds.size(); ++f) {
    for (const auto& w : result.folds[f].warnings) {
      mean.warnings.push_back("fold " + std::to_string(f) + ": " + w);
    }
  }
  // Recall and sensitivity are the same ratio; keep them bit-identical after
  // averaging.
  mean.sensitivity = mean.recall;
  try {
    result.pooled = roc_curve(pooled);
  } catch (const DataError&) {
    mean.warnings.emplace_back("pooled roc: single class");
  }
  return result;
}

nlohmann::json report_to_json(const EvalReport& report) {
  nlohmann::json roc = nlohmann::json::array();
  for (const auto& p : report.roc) roc.push_back({p.fpr, p.tpr});
  return {{"accuracy", report.accuracy},
          {"precision", report.precision},
          {"recall", report.recall},
          {"specificity", report.specificity},
          {"sensitivity", report.sensitivity},
          {"fpr", report.fpr},
          {"confusion",
           {{"tp", report.confusion.tp},
            {"fp", report.confusion.fp},
            {"tn", report.confusion.tn},
            {"fn", report.confusion.fn}}},
          {"auc", report.auc},
          {"roc", std::move(roc)},
          {"warnings", report.warnings}};
}

nlohmann::json cross_validation_to_json(const CrossValidationResult& result) {
  nlohmann::json folds = nlohmann::json::array();
  for (const auto& f : result.folds) folds.push_back(report_to_json(f));
  nlohmann::json pooled = nlohmann::json::array();
  for (const auto& p : result.pooled.points) pooled.push_back({p.fpr, p.tpr});
  nlohmann::json doc = report_to_json(result.mean);
  doc["folds"] = std::move(folds);
  doc["pooled_roc"] = std::move(pooled);
  doc["pooled_auc"] = result.pooled.auc;
  return doc;
}

std::string roc_to_csv(const std::vector<RocPoint>& points) {
  std::string out = "fpr,tpr\n";
  for (const auto& p : points) out += format_double(p.fpr) + "," + format_double(p.tpr) + "\n";
  return out;
}

std::string confusion_table(const ConfusionMatrix& cm) {
  std::ostringstream os;
  os << std::setw(16) << "" << std::setw(12) << "pred bag" << std::setw(12) << "pred nobag" << "\n"
     << std::setw(16) << "actual bag" << std::setw(12) << cm.tp << std::setw(12) << cm.fn << "\n"
     << std::setw(16) << "actual nobag" << std::setw(12) << cm.fp << std::setw(12) << cm.tn << "\n";
  return os.str();
}

}  // namespace ltridp
