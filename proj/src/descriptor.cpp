#include "ltridp/descriptor.hpp"

#include <string>

#include "ltridp/errors.hpp"

namespace ltridp {

namespace {

// Clockwise from NW, matching NeighborRing::values.
constexpr std::array<int, 8> kDx = {-1, 0, 1, 1, 1, 0, -1, -1};
constexpr std::array<int, 8> kDy = {-1, -1, -1, 0, 1, 1, 1, 0};

NeighborRing ring_at(const GrayImage& img, int x, int y) {
  NeighborRing ring;
  for (std::size_t k = 0; k < 8; ++k) ring.values[k] = img.at(x + kDx[k], y + kDy[k]);
  ring.center = img.at(x, y);
  return ring;
}

void require_descriptor_size(const GrayImage& img) {
  if (img.width() < 3 || img.height() < 3) {
    throw SizeError("descriptor needs at least a 3x3 image, got " +
                    std::to_string(img.width()) + "x" + std::to_string(img.height()));
  }
}

CodeGrid interior_grid(const GrayImage& img) {
  CodeGrid grid;
  grid.width = img.width() - 2;
  grid.height = img.height() - 2;
  grid.codes.resize(static_cast<std::size_t>(grid.width) * static_cast<std::size_t>(grid.height));
  return grid;
}

int square(int v) { return v * v; }

}  // namespace

int bin_count(Bins bins) { return static_cast<int>(bins); }

Bins bins_from_count(int count) {
  if (count == 256) return Bins::Full;
  if (count == 50) return Bins::Compat;
  throw DomainError("bins must be 256 or 50, got " + std::to_string(count));
}

NeighborRing neighbor_ring(const GrayImage& img, int x, int y) {
  if (x < 1 || y < 1 || x > img.width() - 2 || y > img.height() - 2) {
    throw DomainError("pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                      ") has no full 8-neighbourhood");
  }
  return ring_at(img, x, y);
}

DifferenceTriple difference_triple(const NeighborRing& ring, int i) {
  if (i < 1 || i > 8) throw DomainError("neighbour index must be in 1..8");
  const int self = ring.neighbor(i);
  return {self - ring.neighbor(i - 1), self - ring.neighbor(i + 1), self - ring.center};
}

int ternary_value(const DifferenceTriple& t) {
  const int negatives = (t.d1 < 0) + (t.d2 < 0) + (t.d3 < 0);
  return negatives % 3;
}

PatternCodes encode_patterns(const NeighborRing& ring) {
  PatternCodes codes;
  for (int i = 1; i <= 8; ++i) {
    const int f = ternary_value(difference_triple(ring, i));
    const auto bit = static_cast<std::uint8_t>(1u << (i - 1));
    if (f == 1) codes.pattern1 |= bit;
    if (f == 2) codes.pattern2 |= bit;
  }
  return codes;
}

std::uint8_t magnitude_code(const NeighborRing& ring) {
  std::uint8_t code = 0;
  const int c = ring.center;
  for (int i = 1; i <= 8; ++i) {
    const int prev = ring.neighbor(i - 1);
    const int next = ring.neighbor(i + 1);
    const int self = ring.neighbor(i);
    const int m1_sq = square(prev - c) + square(next - c);
    const int m2_sq = square(prev - self) + square(next - self);
    if (m1_sq >= m2_sq) code |= static_cast<std::uint8_t>(1u << (i - 1));
  }
  return code;
}

std::uint8_t lbp_code(const NeighborRing& ring) {
  std::uint8_t code = 0;
  for (std::size_t k = 0; k < 8; ++k) {
    if (ring.values[k] >= ring.center) code |= static_cast<std::uint8_t>(1u << k);
  }
  return code;
}

CodeMaps code_maps(const GrayImage& img) {
  require_descriptor_size(img);
  CodeMaps maps{interior_grid(img), interior_grid(img), interior_grid(img)};
  std::size_t out = 0;
  for (int y = 1; y < img.height() - 1; ++y) {
    for (int x = 1; x < img.width() - 1; ++x, ++out) {
      const NeighborRing ring = ring_at(img, x, y);
      const PatternCodes p = encode_patterns(ring);
      maps.pattern1.codes[out] = p.pattern1;
      maps.pattern2.codes[out] = p.pattern2;
      maps.magnitude.codes[out] = magnitude_code(ring);
    }
  }
  return maps;
}

CodeGrid lbp_map(const GrayImage& img) {
  require_descriptor_size(img);
  CodeGrid grid = interior_grid(img);
  std::size_t out = 0;
  for (int y = 1; y < img.height() - 1; ++y) {
    for (int x = 1; x < img.width() - 1; ++x, ++out) grid.codes[out] = lbp_code(ring_at(img, x, y));
  }
  return grid;
}

std::vector<double> histogram_of_codes(const CodeGrid& grid, Bins bins) {
  const int n = bin_count(bins);
  std::vector<double> hist(static_cast<std::size_t>(n), 0.0);
  for (const std::uint8_t code : grid.codes) {
    hist[static_cast<std::size_t>(code * n / 256)] += 1.0;
  }
  return hist;
}

FeatureVector extract_feature(const GrayImage& img, Bins bins) {
  const CodeMaps maps = code_maps(img);
  FeatureVector feature;
  feature.reserve(static_cast<std::size_t>(3 * bin_count(bins)));
  for (const CodeGrid* grid : {&maps.pattern1, &maps.pattern2, &maps.magnitude}) {
    const auto block = histogram_of_codes(*grid, bins);
    feature.insert(feature.end(), block.begin(), block.end());
  }
  return feature;
}

FeatureVector extract_lbp_feature(const GrayImage& img, Bins bins) {
  return histogram_of_codes(lbp_map(img), bins);
}

std::string_view descriptor_name(DescriptorKind kind) {
  return kind == DescriptorKind::LTriDP ? "ltridp" : "lbp";
}

DescriptorKind descriptor_from_name(std::string_view name) {
  if (name == "ltridp") return DescriptorKind::LTriDP;
  if (name == "lbp") return DescriptorKind::LBP;
  throw DomainError("unknown descriptor '" + std::string(name) + "' (expected ltridp or lbp)");
}

int feature_dim(DescriptorKind kind, Bins bins) {
  return (kind == DescriptorKind::LTriDP ? 3 : 1) * bin_count(bins);
}

FeatureVector extract_descriptor(const GrayImage& img, DescriptorKind kind, Bins bins) {
  return kind == DescriptorKind::LTriDP ? extract_feature(img, bins)
                                        : extract_lbp_feature(img, bins);
}

}  // namespace ltridp
