#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "ltridp/sample.hpp"
#include "ltridp/svm.hpp"

namespace ltridp {

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

struct EvalReport {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double specificity = 0.0;
  double sensitivity = 0.0;
  double fpr = 0.0;
  ConfusionMatrix confusion;
  std::vector<RocPoint> roc;
  double auc = 0.0;
  /// One entry per metric whose denominator was zero (reported as 0).
  std::vector<std::string> warnings;
};

/// Ratios from a confusion matrix; 0/0 ratios are reported as 0 and flagged.
EvalReport metrics(const ConfusionMatrix& cm);

struct ScoredSample {
  double score = 0.0;
  Label label = Label::NoBag;
};

/// Predictions use the decision_value >= 0 rule.
ConfusionMatrix confusion_from_scores(std::span<const ScoredSample> scores);

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

/// Threshold sweep over the distinct scores in descending order, tied scores
/// forming one step, bracketed by (0,0) and (1,1). AUC by the trapezoid rule.
/// Throws DataError unless both classes are present.
RocCurve roc_curve(std::span<const ScoredSample> scores);

/// Confusion-derived metrics plus ROC/AUC. A single-class score set gets an
/// empty curve and a warning instead of an error.
EvalReport evaluate(std::span<const ScoredSample> scores);

std::vector<ScoredSample> score_samples(const SvmModel& model, const SampleSet& samples);

struct TrainTestSplit {
  SampleSet train;
  SampleSet test;
};

/// Stratified: per class, floor(0.7 n) samples (after a seeded shuffle) go to
/// training. Both halves keep the input order. Throws DataError when a class
/// has fewer than 2 samples.
TrainTestSplit split_70_30(const SampleSet& samples, std::uint64_t seed);

/// Stratified k folds. Each class is shuffled with the seed, then samples are
/// dealt round-robin to folds with one counter shared across classes, so test
/// folds differ in size by at most one overall and per class. Throws
/// DataError when k < 2 or k exceeds the sample count.
std::vector<TrainTestSplit> kfold(const SampleSet& samples, int k, std::uint64_t seed);

struct CrossValidationResult {
  EvalReport mean;                  // unweighted mean of per-fold metrics
  std::vector<EvalReport> folds;    // ordered by fold index
  RocCurve pooled;                  // out-of-fold scores from every fold
};

CrossValidationResult cross_validate(const SampleSet& samples, int k, const TrainerConfig& config,
                                     std::uint64_t seed);

nlohmann::json report_to_json(const EvalReport& report);
nlohmann::json cross_validation_to_json(const CrossValidationResult& result);

/// `fpr,tpr` header followed by one line per point.
std::string roc_to_csv(const std::vector<RocPoint>& points);

/// 2x2 confusion table for terminal output.
std::string confusion_table(const ConfusionMatrix& cm);

}  // namespace ltridp
