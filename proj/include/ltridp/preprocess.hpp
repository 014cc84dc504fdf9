#pragma once

#include <array>
#include <cstdint>

#include "ltridp/image.hpp"

namespace ltridp {

inline constexpr int kGrayLevels = 256;

/// Occurrence count of every gray level; `total` is the pixel count.
struct IntensityHistogram {
  std::array<std::uint64_t, kGrayLevels> counts{};
  std::uint64_t total = 0;
};

/// Running sum of a histogram; cdf[255] equals the pixel count.
struct CumulativeDistribution {
  std::array<std::uint64_t, kGrayLevels> cdf{};

  std::uint64_t total() const { return cdf[kGrayLevels - 1]; }
};

IntensityHistogram compute_histogram(const GrayImage& img);
CumulativeDistribution compute_cdf(const IntensityHistogram& hist);

/// Linear stretch of [min, max] onto [0, 255]; constant images are returned
/// unchanged.
GrayImage minmax_normalize(const GrayImage& img);

/// Per-level transfer function used by equalize():
///   out(v) = round((cdf(v) - cdf_min) / (N - cdf_min) * 255)
/// with cdf_min the smallest nonzero cdf value. Identity when the image has
/// a single gray level.
std::array<Intensity, kGrayLevels> equalization_lut(const CumulativeDistribution& cdf);

/// Global histogram equalization.
GrayImage equalize(const GrayImage& img);

}  // namespace ltridp
