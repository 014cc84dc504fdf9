#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ltridp/image.hpp"

namespace ltridp {

/// The 8-neighbourhood of an interior pixel, clockwise from the top-left:
///
///     I1 I2 I3
///     I8 Ic I4
///     I7 I6 I5
///
/// values[0] holds I1, values[7] holds I8.
struct NeighborRing {
  std::array<Intensity, 8> values{};
  Intensity center = 0;

  /// I_i for i in 1..8, wrapping 0 -> 8 and 9 -> 1.
  int neighbor(int i) const { return values[static_cast<std::size_t>((i + 7) % 8)]; }

  friend bool operator==(const NeighborRing&, const NeighborRing&) = default;
};

/// Signed differences of neighbour I_i against its previous neighbour,
/// its next neighbour and the centre.
struct DifferenceTriple {
  int d1 = 0;
  int d2 = 0;
  int d3 = 0;

  friend bool operator==(const DifferenceTriple&, const DifferenceTriple&) = default;
};

/// Per-interior-pixel code plane, (W-2) x (H-2).
struct CodeGrid {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> codes;

  std::uint8_t at(int x, int y) const {
    return codes[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                 static_cast<std::size_t>(x)];
  }
  /// Code plane viewed as an image, for debug output.
  GrayImage to_image() const { return GrayImage(width, height, codes); }

  friend bool operator==(const CodeGrid&, const CodeGrid&) = default;
};

struct CodeMaps {
  CodeGrid pattern1;   // neighbours whose ternary value is 1
  CodeGrid pattern2;   // neighbours whose ternary value is 2
  CodeGrid magnitude;  // neighbours with M1 >= M2
};

struct PatternCodes {
  std::uint8_t pattern1 = 0;
  std::uint8_t pattern2 = 0;
};

/// Histogram resolution per code map. Compat quantises the 256 codes into
/// 50 bins, giving 150-dimensional LTriDP vectors.
enum class Bins : int { Full = 256, Compat = 50 };

int bin_count(Bins bins);
/// Throws DomainError for anything but 256 or 50.
Bins bins_from_count(int count);

using FeatureVector = std::vector<double>;

/// Throws DomainError unless 1 <= x <= W-2 and 1 <= y <= H-2.
NeighborRing neighbor_ring(const GrayImage& img, int x, int y);

/// i in 1..8; throws DomainError otherwise.
DifferenceTriple difference_triple(const NeighborRing& ring, int i);

/// Number of strictly negative differences, modulo 3.
int ternary_value(const DifferenceTriple& t);

/// Packs [f_i = 1] and [f_i = 2] into two bytes, I1 in the least
/// significant bit.
PatternCodes encode_patterns(const NeighborRing& ring);

/// Bit i-1 is set when
///   (I_{i-1} - Ic)^2 + (I_{i+1} - Ic)^2 >= (I_{i-1} - I_i)^2 + (I_{i+1} - I_i)^2,
/// i.e. M1 >= M2 compared on squared magnitudes (sqrt is monotone).
std::uint8_t magnitude_code(const NeighborRing& ring);

/// Classic LBP: bit i-1 set when I_i >= Ic.
std::uint8_t lbp_code(const NeighborRing& ring);

/// Throws SizeError for images smaller than 3x3. Border pixels are skipped.
CodeMaps code_maps(const GrayImage& img);
CodeGrid lbp_map(const GrayImage& img);

/// Per-code counts; in compat mode code c lands in bin floor(c * 50 / 256).
std::vector<double> histogram_of_codes(const CodeGrid& grid, Bins bins);

/// pattern1 | pattern2 | magnitude histograms, 3 x bins values.
FeatureVector extract_feature(const GrayImage& img, Bins bins);

/// Single LBP histogram, bins values. Baseline for comparison runs.
FeatureVector extract_lbp_feature(const GrayImage& img, Bins bins);

enum class DescriptorKind { LTriDP, LBP };

std::string_view descriptor_name(DescriptorKind kind);
/// Accepts "ltridp" and "lbp"; throws DomainError otherwise.
DescriptorKind descriptor_from_name(std::string_view name);

/// Feature length for a descriptor at the given resolution.
int feature_dim(DescriptorKind kind, Bins bins);

FeatureVector extract_descriptor(const GrayImage& img, DescriptorKind kind, Bins bins);

}  // namespace ltridp
