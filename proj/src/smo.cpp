#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <numeric>
#include <unordered_map>

#include "ltridp/errors.hpp"
#include "ltridp/rng.hpp"
#include "ltridp/svm.hpp"
#include "training_data.hpp"

namespace ltridp {

namespace {

constexpr double kTau = 1e-12;
constexpr std::size_t kCacheBytes = std::size_t{256} << 20;

// Rows of Q_ij = y_i y_j K(x_i, x_j), computed on demand and kept in an
// LRU cache bounded by kCacheBytes.
class KernelRows {
 public:
  KernelRows(const detail::StandardizedSet& data, const KernelSpec& kernel)
      : data_(data), kernel_(kernel), n_(data.x.size()) {
    capacity_ = std::max<std::size_t>(2, kCacheBytes / (sizeof(double) * std::max<std::size_t>(n_, 1)));
    diagonal_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) diagonal_[i] = kernel_eval(kernel_, data_.x[i], data_.x[i]);
  }

  double diagonal(std::size_t i) const { return diagonal_[i]; }

  const std::vector<double>& row(std::size_t i) {
    if (auto it = index_.find(i); it != index_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->values;
    }
    if (lru_.size() >= capacity_) {
      index_.erase(lru_.back().row);
      lru_.pop_back();
    }
    Entry entry{i, std::vector<double>(n_)};
    for (std::size_t j = 0; j < n_; ++j) {
      entry.values[j] = data_.y[i] * data_.y[j] * kernel_eval(kernel_, data_.x[i], data_.x[j]);
    }
    lru_.push_front(std::move(entry));
    index_[i] = lru_.begin();
    return lru_.front().values;
  }

 private:
  struct Entry {
    std::size_t row;
    std::vector<double> values;
  };

  const detail::StandardizedSet& data_;
  KernelSpec kernel_;
  std::size_t n_;
  std::size_t capacity_;
  std::vector<double> diagonal_;
  std::list<Entry> lru_;
  std::unordered_map<std::size_t, std::list<Entry>::iterator> index_;
};

}  // namespace

SmoTrainingResult train_smo_detailed(const SampleSet& samples, const KernelSpec& kernel,
                                     const SmoOptions& options) {
  if (!(options.c > 0.0)) throw DomainError("C must be positive");
  if (!(options.tol > 0.0)) throw DomainError("tol must be positive");
  kernel.validate();
  const detail::StandardizedSet data = detail::standardize_for_training(samples);
  const std::size_t n = data.x.size();
  const double c = options.c;
  const std::vector<int>& y = data.y;

  // Index visiting order; ties in pair selection go to the later index in
  // this seeded order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SeededRng rng(options.seed);
  rng.shuffle(std::span<std::size_t>(order));

  KernelRows q(data, kernel);
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // Q alpha - 1

  const std::uint64_t max_iterations =
      static_cast<std::uint64_t>(std::max(options.max_passes, 1)) *
      std::max<std::uint64_t>(100 * static_cast<std::uint64_t>(n), 10000);

  auto in_up = [&](std::size_t t) { return y[t] > 0 ? alpha[t] < c : alpha[t] > 0.0; };
  auto in_low = [&](std::size_t t) { return y[t] > 0 ? alpha[t] > 0.0 : alpha[t] < c; };

  SmoTrainingResult result;
  std::uint64_t iter = 0;
  for (; iter < max_iterations; ++iter) {
    // First index: maximal -y G over the up set.
    double gmax = -std::numeric_limits<double>::infinity();
    std::ptrdiff_t i_sel = -1;
    for (const std::size_t t : order) {
      if (in_up(t) && -y[t] * grad[t] >= gmax) {
        gmax = -y[t] * grad[t];
        i_sel = static_cast<std::ptrdiff_t>(t);
      }
    }
    if (i_sel < 0) {
      result.converged = true;
      break;
    }
    const auto i = static_cast<std::size_t>(i_sel);
    const std::vector<double>& qi = q.row(i);

    // Second index: largest guaranteed objective decrease over the low set.
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best_gain = std::numeric_limits<double>::infinity();
    std::ptrdiff_t j_sel = -1;
    for (const std::size_t t : order) {
      if (!in_low(t)) continue;
      const double score = y[t] * grad[t];  // -(-y G)
      gmax2 = std::max(gmax2, score);
      const double grad_diff = gmax + score;
      if (grad_diff > 0.0) {
        const double quad = q.diagonal(i) + q.diagonal(t) - 2.0 * y[i] * y[t] * qi[t];
        const double gain = -(grad_diff * grad_diff) / (quad > 0.0 ? quad : kTau);
        if (gain <= best_gain) {
          best_gain = gain;
          j_sel = static_cast<std::ptrdiff_t>(t);
        }
      }
    }
    if (gmax + gmax2 < options.tol || j_sel < 0) {
      result.converged = true;
      break;
    }
    const auto j = static_cast<std::size_t>(j_sel);
    const std::vector<double>& qj = q.row(j);
    const std::vector<double>& qi_row = q.row(i);  // reload: row(j) may evict

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    if (y[i] != y[j]) {
      double quad = q.diagonal(i) + q.diagonal(j) + 2.0 * qi_row[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = q.diagonal(i) + q.diagonal(j) - 2.0 * qi_row[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) grad[t] += qi_row[t] * di + qj[t] * dj;
  }
  result.iterations = iter;

  // Bias: average over free multipliers, else the midpoint of the feasible
  // interval left by the bounded ones.
  double upper = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= c) {
      if (y[t] < 0) upper = std::min(upper, yg); else lower = std::max(lower, yg);
    } else if (alpha[t] <= 0.0) {
      if (y[t] > 0) upper = std::min(upper, yg); else lower = std::max(lower, yg);
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count)
                                    : (upper + lower) / 2.0;

  SvmModel& model = result.model;
  model.solver = SolverKind::Smo;
  model.kernel = kernel;
  model.hyper.c = c;
  model.hyper.tol = options.tol;
  model.hyper.max_passes = options.max_passes;
  model.hyper.seed = options.seed;
  model.scaler = data.scaler;
  model.bias = -rho;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) model.support.push_back({data.x[t], y[t], alpha[t]});
  }
  result.alpha = std::move(alpha);
  return result;
}

SvmModel train_smo(const SampleSet& samples, const KernelSpec& kernel, const SmoOptions& options) {
  return train_smo_detailed(samples, kernel, options).model;
}

}  // namespace ltridp
