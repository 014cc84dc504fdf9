#include "ltridp/preprocess.hpp"

#include <algorithm>

namespace ltridp {

namespace {

// round_half_up(num / den) for non-negative operands.
std::uint64_t div_round_half_up(std::uint64_t num, std::uint64_t den) {
  return (2 * num + den) / (2 * den);
}

GrayImage apply_lut(const GrayImage& img, const std::array<Intensity, kGrayLevels>& lut) {
  GrayImage out = img;
  for (auto& px : out.pixels()) px = lut[px];
  return out;
}

}  // namespace

IntensityHistogram compute_histogram(const GrayImage& img) {
  IntensityHistogram hist;
  for (const Intensity px : img.pixels()) ++hist.counts[px];
  hist.total = img.size();
  return hist;
}

CumulativeDistribution compute_cdf(const IntensityHistogram& hist) {
  CumulativeDistribution out;
  std::uint64_t running = 0;
  for (int k = 0; k < kGrayLevels; ++k) {
    running += hist.counts[k];
    out.cdf[k] = running;
  }
  return out;
}

GrayImage minmax_normalize(const GrayImage& img) {
  if (img.empty()) return img;
  const auto [lo_it, hi_it] = std::minmax_element(img.pixels().begin(), img.pixels().end());
  const std::uint64_t lo = *lo_it;
  const std::uint64_t hi = *hi_it;
  if (lo == hi) return img;

  std::array<Intensity, kGrayLevels> lut{};
  for (std::uint64_t v = lo; v <= hi; ++v) {
    lut[v] = static_cast<Intensity>(div_round_half_up((v - lo) * 255, hi - lo));
  }
  return apply_lut(img, lut);
}

std::array<Intensity, kGrayLevels> equalization_lut(const CumulativeDistribution& cdf) {
  std::array<Intensity, kGrayLevels> lut{};
  for (int k = 0; k < kGrayLevels; ++k) lut[k] = static_cast<Intensity>(k);

  const std::uint64_t n = cdf.total();
  const auto first = std::find_if(cdf.cdf.begin(), cdf.cdf.end(),
                                  [](std::uint64_t c) { return c != 0; });
  if (first == cdf.cdf.end()) return lut;
  const std::uint64_t cdf_min = *first;
  if (cdf_min == n) return lut;  // single gray level

  for (int k = 0; k < kGrayLevels; ++k) {
    const std::uint64_t c = cdf.cdf[k];
    lut[k] = c < cdf_min ? 0
                         : static_cast<Intensity>(div_round_half_up((c - cdf_min) * 255, n - cdf_min));
  }
  return lut;
}

GrayImage equalize(const GrayImage& img) {
  return apply_lut(img, equalization_lut(compute_cdf(compute_histogram(img))));
}

}  // namespace ltridp
