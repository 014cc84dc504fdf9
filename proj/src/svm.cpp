#include "ltridp/svm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ltridp/errors.hpp"
#include "ltridp/rng.hpp"

namespace ltridp {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(a) +
                         " does not match " + std::to_string(b));
  }
}

}  // namespace

std::string_view kernel_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::Linear: return "linear";
    case KernelKind::Quadratic: return "quadratic";
    case KernelKind::Cubic: return "cubic";
    case KernelKind::Gaussian: return "gaussian";
  }
  return "gaussian";
}

KernelKind kernel_from_name(std::string_view name) {
  if (name == "linear") return KernelKind::Linear;
  if (name == "quadratic") return KernelKind::Quadratic;
  if (name == "cubic") return KernelKind::Cubic;
  if (name == "gaussian" || name == "rbf") return KernelKind::Gaussian;
  throw DomainError("unknown kernel '" + std::string(name) + "'");
}

std::string_view solver_name(SolverKind kind) { return kind == SolverKind::Primal ? "primal" : "smo"; }

void KernelSpec::validate() const {
  if (kind == KernelKind::Gaussian && !(gamma > 0.0)) {
    throw DomainError("gaussian kernel needs gamma > 0");
  }
}

double kernel_eval(const KernelSpec& kernel, std::span<const double> a, std::span<const double> b) {
  require_same_dim(a.size(), b.size(), "kernel_eval");
  switch (kernel.kind) {
    case KernelKind::Linear: return dot(a, b);
    case KernelKind::Quadratic: {
      const double v = dot(a, b) + kernel.coef0;
      return v * v;
    }
    case KernelKind::Cubic: {
      const double v = dot(a, b) + kernel.coef0;
      return v * v * v;
    }
    case KernelKind::Gaussian: {
      double d2 = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        d2 += d * d;
      }
      return std::exp(-kernel.gamma * d2);
    }
  }
  return 0.0;
}

FeatureVector ScalerParams::apply(std::span<const double> x) const {
  require_same_dim(x.size(), mean.size(), "scaler");
  FeatureVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mean[i]) / stddev[i];
  return out;
}

ScalerParams fit_scaler(std::span<const FeatureVector> samples) {
  if (samples.empty()) throw DataError("cannot fit a scaler on zero samples");
  const std::size_t dim = samples.front().size();
  ScalerParams params;
  params.mean.assign(dim, 0.0);
  params.stddev.assign(dim, 0.0);
  for (const auto& s : samples) {
    require_same_dim(s.size(), dim, "fit_scaler");
    for (std::size_t i = 0; i < dim; ++i) params.mean[i] += s[i];
  }
  const double n = static_cast<double>(samples.size());
  for (auto& m : params.mean) m /= n;
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double d = s[i] - params.mean[i];
      params.stddev[i] += d * d;
    }
  }
  for (auto& sd : params.stddev) {
    sd = std::sqrt(sd / n);
    if (sd == 0.0) sd = 1.0;
  }
  return params;
}

double decision_value(const SvmModel& model, std::span<const double> x) {
  const FeatureVector scaled = model.scaler.apply(x);
  if (model.solver == SolverKind::Primal) {
    require_same_dim(model.weights.size(), scaled.size(), "decision_value");
    return dot(model.weights, scaled) + model.bias;
  }
  double sum = 0.0;
  for (const auto& sv : model.support) {
    sum += sv.alpha * sv.label * kernel_eval(model.kernel, sv.vector, scaled);
  }
  return sum + model.bias;
}

Label predict(const SvmModel& model, std::span<const double> x) {
  return decision_value(model, x) >= 0.0 ? Label::Bag : Label::NoBag;
}

double kkt_residual(double alpha, int label, double decision, double c) {
  const double margin = label * decision;
  if (alpha <= 0.0) return std::max(0.0, 1.0 - margin);
  if (alpha >= c) return std::max(0.0, margin - 1.0);
  return std::abs(margin - 1.0);
}

SvmModel train(const SampleSet& samples, const TrainerConfig& config) {
  if (config.kernel == KernelKind::Linear && !config.force_smo) {
    return train_linear(samples, {config.hyper.c, config.hyper.epochs, config.hyper.seed});
  }
  KernelSpec kernel{config.kernel, config.gamma, config.coef0};
  if (kernel.kind == KernelKind::Gaussian && kernel.gamma == 0.0 && !samples.empty()) {
    kernel.gamma = 1.0 / static_cast<double>(std::max<std::size_t>(samples.front().features.size(), 1));
  }
  SmoOptions options{config.hyper.c, config.hyper.tol, config.hyper.max_passes, config.hyper.seed};
  SvmModel model = train_smo(samples, kernel, options);
  model.hyper.epochs = config.hyper.epochs;
  return model;
}

}  // namespace ltridp
