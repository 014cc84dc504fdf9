#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace ltridp {

using Intensity = std::uint8_t;

/// Row-major 8-bit grayscale raster.
///
/// Any positive size is representable; operations that need a 3x3
/// neighbourhood (descriptors, resizing targets) enforce that themselves.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, Intensity fill = 0);
  GrayImage(int width, int height, std::vector<Intensity> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  Intensity at(int x, int y) const { return data_[index(x, y)]; }
  Intensity& at(int x, int y) { return data_[index(x, y)]; }

  std::span<const Intensity> pixels() const { return data_; }
  std::span<Intensity> pixels() { return data_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Intensity> data_;
};

/// Decodes a binary PGM (P5, maxval 255) or an 8-bit PNG. Colour PNGs are
/// reduced with to_grayscale; alpha is discarded.
/// Throws IoError if the file cannot be read, FormatError otherwise.
GrayImage load_image(const std::filesystem::path& path);

/// Decodes in-memory file contents (format sniffed from the magic bytes).
GrayImage decode_image(std::span<const std::uint8_t> bytes);

GrayImage decode_pgm(std::span<const std::uint8_t> bytes);
GrayImage decode_png(std::span<const std::uint8_t> bytes);

/// P5 encoding with maxval 255.
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

/// round(0.299 r + 0.587 g + 0.114 b), halves rounded up.
Intensity to_grayscale(Intensity r, Intensity g, Intensity b);

/// Bilinear resampling with half-pixel-centre mapping and edge clamping.
/// Throws SizeError if the target is smaller than 3x3.
GrayImage resize_bilinear(const GrayImage& img, int out_width, int out_height);

/// Rounds a non-negative value half-up and clamps it to [0, 255].
Intensity round_to_intensity(double value);

}  // namespace ltridp
