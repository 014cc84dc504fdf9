#include <algorithm>
#include <cmath>

#include "ltridp/errors.hpp"
#include "ltridp/rng.hpp"
#include "ltridp/svm.hpp"
#include "training_data.hpp"

namespace ltridp {

namespace {

// Weights carry the bias as their last coordinate; inputs get an implicit 1.
double augmented_dot(const std::vector<double>& w, const FeatureVector& x) {
  double s = w.back();
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i];
  return s;
}

double objective(const std::vector<double>& w, const detail::StandardizedSet& data, double lambda) {
  double norm2 = 0.0;
  for (const double v : w) norm2 += v * v;
  double hinge = 0.0;
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    hinge += std::max(0.0, 1.0 - data.y[i] * augmented_dot(w, data.x[i]));
  }
  return 0.5 * lambda * norm2 + hinge / static_cast<double>(data.x.size());
}

}  // namespace

LinearTrainingResult train_linear_detailed(const SampleSet& samples, const LinearOptions& options) {
  if (!(options.c > 0.0)) throw DomainError("C must be positive");
  const detail::StandardizedSet data = detail::standardize_for_training(samples);
  const std::size_t n = data.x.size();
  const std::size_t dim = data.scaler.dim();
  const double lambda = 1.0 / (options.c * static_cast<double>(n));
  const std::uint64_t steps = options.epochs > 0 ? options.epochs : 50 * static_cast<std::uint64_t>(n);
  const double radius = 1.0 / std::sqrt(lambda);

  std::vector<double> w(dim + 1, 0.0);
  std::vector<double> best = w;
  LinearTrainingResult result;
  double best_objective = objective(w, data, lambda);
  result.objective_trace.push_back(best_objective);

  SeededRng rng(options.seed);
  for (std::uint64_t t = 1; t <= steps; ++t) {
    const std::size_t i = rng.index(n);
    const double eta = 1.0 / (lambda * static_cast<double>(t));
    const double margin = data.y[i] * augmented_dot(w, data.x[i]);
    const double shrink = 1.0 - eta * lambda;
    for (double& v : w) v *= shrink;
    if (margin < 1.0) {
      const double step = eta * data.y[i];
      for (std::size_t k = 0; k < dim; ++k) w[k] += step * data.x[i][k];
      w[dim] += step;
    }
    double norm2 = 0.0;
    for (const double v : w) norm2 += v * v;
    if (norm2 > radius * radius) {
      const double scale = radius / std::sqrt(norm2);
      for (double& v : w) v *= scale;
    }

    if (t % n == 0 || t == steps) {
      const double obj = objective(w, data, lambda);
      if (obj < best_objective) {
        best_objective = obj;
        best = w;
      }
      result.objective_trace.push_back(best_objective);
    }
  }

  SvmModel& model = result.model;
  model.solver = SolverKind::Primal;
  model.kernel = KernelSpec{KernelKind::Linear, 0.0, 0.0};
  model.hyper.c = options.c;
  model.hyper.epochs = steps;
  model.hyper.seed = options.seed;
  model.scaler = data.scaler;
  model.bias = best[dim];
  model.weights.assign(best.begin(), best.begin() + static_cast<std::ptrdiff_t>(dim));
  return result;
}

SvmModel train_linear(const SampleSet& samples, const LinearOptions& options) {
  return train_linear_detailed(samples, options).model;
}

}  // namespace ltridp
