#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ltridp/sample.hpp"

namespace ltridp {

enum class KernelKind { Linear, Quadratic, Cubic, Gaussian };

std::string_view kernel_name(KernelKind kind);
KernelKind kernel_from_name(std::string_view name);

struct KernelSpec {
  KernelKind kind = KernelKind::Gaussian;
  double gamma = 1.0;  // gaussian only, > 0
  double coef0 = 1.0;  // polynomial kernels

  /// Throws DomainError when a gaussian kernel has gamma <= 0.
  void validate() const;
};

/// linear: a.b | quadratic: (a.b + coef0)^2 | cubic: (a.b + coef0)^3 |
/// gaussian: exp(-gamma |a - b|^2). Throws DimensionError on length mismatch.
double kernel_eval(const KernelSpec& kernel, std::span<const double> a, std::span<const double> b);

/// Per-dimension z-score parameters. Zero deviations are stored as 1.
struct ScalerParams {
  std::vector<double> mean;
  std::vector<double> stddev;

  std::size_t dim() const { return mean.size(); }
  FeatureVector apply(std::span<const double> x) const;
};

/// Population mean and deviation per dimension. Throws DataError on an empty
/// set and DimensionError on inconsistent lengths.
ScalerParams fit_scaler(std::span<const FeatureVector> samples);

enum class SolverKind { Primal, Smo };

std::string_view solver_name(SolverKind kind);

struct SupportVector {
  FeatureVector vector;  // standardized coordinates
  int label = 1;
  double alpha = 0.0;
};

struct Hyperparameters {
  double c = 1.0;
  double tol = 1e-3;
  int max_passes = 10;
  std::uint64_t epochs = 0;  // primal steps; 0 selects 50 * n
  std::uint64_t seed = 42;
};

struct SvmModel {
  SolverKind solver = SolverKind::Smo;
  KernelSpec kernel;
  Hyperparameters hyper;
  ScalerParams scaler;
  double bias = 0.0;
  std::vector<double> weights;              // primal solver
  std::vector<SupportVector> support;       // SMO solver

  std::size_t feature_dim() const { return scaler.dim(); }
};

/// w.x' + b or sum alpha_i y_i K(s_i, x') + b with x' the standardized input.
/// Throws DimensionError when x does not match the model.
double decision_value(const SvmModel& model, std::span<const double> x);

/// +1 when the decision value is >= 0.
Label predict(const SvmModel& model, std::span<const double> x);

struct LinearOptions {
  double c = 1.0;
  std::uint64_t epochs = 0;  // 0 selects 50 * n
  std::uint64_t seed = 42;
};

struct LinearTrainingResult {
  SvmModel model;
  /// Objective of the retained iterate at each checkpoint, starting with the
  /// zero vector. Non-increasing by construction.
  std::vector<double> objective_trace;
};

/// Primal subgradient descent (Pegasos) on
///   lambda/2 |w|^2 + mean_i max(0, 1 - y_i (w.x_i + b)),  lambda = 1/(c n),
/// with the bias carried as an extra constant feature. Throws DataError when
/// only one class is present.
LinearTrainingResult train_linear_detailed(const SampleSet& samples, const LinearOptions& options);
SvmModel train_linear(const SampleSet& samples, const LinearOptions& options);

struct SmoOptions {
  double c = 1.0;
  double tol = 1e-3;
  int max_passes = 10;
  std::uint64_t seed = 42;
};

struct SmoTrainingResult {
  SvmModel model;
  std::vector<double> alpha;  // one per training sample
  bool converged = false;
  std::uint64_t iterations = 0;
};

/// Two-variable SMO on the dual with maximal-violating-pair selection.
/// Terminates once the KKT gap drops below tol, which bounds every
/// per-point KKT residual by tol, or after max_passes * max(100 n, 10000)
/// pair updates. Throws DataError when only one class is present.
SmoTrainingResult train_smo_detailed(const SampleSet& samples, const KernelSpec& kernel,
                                     const SmoOptions& options);
SvmModel train_smo(const SampleSet& samples, const KernelSpec& kernel, const SmoOptions& options);

/// Amount by which a training point violates its KKT condition:
///   alpha = 0      needs y f >= 1
///   0 < alpha < C  needs y f == 1
///   alpha = C      needs y f <= 1
double kkt_residual(double alpha, int label, double decision, double c);

/// Full trainer configuration as exposed on the command line.
struct TrainerConfig {
  KernelKind kernel = KernelKind::Gaussian;
  double gamma = 0.0;  // 0 selects 1 / dim
  double coef0 = 1.0;
  /// Linear kernels use the primal solver unless force_smo is set.
  bool force_smo = false;
  Hyperparameters hyper;
};

SvmModel train(const SampleSet& samples, const TrainerConfig& config);

nlohmann::json model_to_json(const SvmModel& model);
/// Throws FormatError on schema violations.
SvmModel model_from_json(const nlohmann::json& doc);

}  // namespace ltridp
