#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace ltridp {

/// Seeded generator whose output sequence is identical on every platform.
/// std::uniform_int_distribution and std::shuffle are implementation
/// defined, so draws are derived from the raw engine output instead.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform index in [0, bound). bound must be > 0.
  std::size_t index(std::size_t bound) {
    // Rejection sampling removes modulo bias.
    const std::uint64_t b = bound;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % b);
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return static_cast<std::size_t>(v % b);
  }

  /// Uniform real in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ltridp
