#include "ltridp/image.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "ltridp/errors.hpp"

namespace ltridp {

GrayImage::GrayImage(int width, int height, Intensity fill)
    : GrayImage(width, height,
                std::vector<Intensity>(
                    static_cast<std::size_t>(std::max(width, 0)) *
                        static_cast<std::size_t>(std::max(height, 0)),
                    fill)) {}

GrayImage::GrayImage(int width, int height, std::vector<Intensity> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width <= 0 || height <= 0) {
    throw SizeError("image dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw SizeError("pixel buffer holds " + std::to_string(data_.size()) +
                    " values, expected " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
}

Intensity round_to_intensity(double value) {
  const double r = std::floor(value + 0.5);
  return static_cast<Intensity>(std::clamp(r, 0.0, 255.0));
}

Intensity to_grayscale(Intensity r, Intensity g, Intensity b) {
  // Integer weights in thousandths keep the half-up rule exact.
  const int weighted = 299 * r + 587 * g + 114 * b;
  return static_cast<Intensity>((weighted + 500) / 1000);
}

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return bytes;
}

// PNM header tokens are separated by whitespace; '#' starts a comment
// that runs to the end of the line.
class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  long next_number() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw FormatError("malformed PGM header");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000) throw FormatError("PGM header value too large");
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw FormatError("malformed PGM header");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

}  // namespace

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw FormatError("not a binary PGM (P5) file");
  }
  PnmHeaderReader header(bytes);
  const long width = header.next_number();
  const long height = header.next_number();
  const long maxval = header.next_number();
  if (maxval != 255) {
    throw FormatError("unsupported PGM maxval " + std::to_string(maxval) +
                      " (only 255 is accepted)");
  }
  if (width <= 0 || height <= 0) throw FormatError("PGM has zero dimension");
  const std::size_t offset = header.raster_offset();
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - std::min(offset, bytes.size()) < count) {
    throw FormatError("PGM raster truncated");
  }
  std::vector<Intensity> data(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                              bytes.begin() + static_cast<std::ptrdiff_t>(offset + count));
  return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

GrayImage decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kPngSignature, 8) != 0) {
    throw FormatError("not a PNG file");
  }
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()) == 0) {
    throw FormatError(std::string("PNG decode failed: ") + image.message);
  }
  struct Guard {
    png_image* image;
    ~Guard() { png_image_free(image); }
  } guard{&image};

  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    throw FormatError("unsupported 16-bit PNG (8-bit only)");
  }
  const bool colour = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = colour ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int channels = colour ? 3 : 1;
  const std::size_t count = static_cast<std::size_t>(image.width) * image.height;
  std::vector<std::uint8_t> raster(count * static_cast<std::size_t>(channels));
  if (png_image_finish_read(&image, nullptr, raster.data(), 0, nullptr) == 0) {
    throw FormatError(std::string("PNG decode failed: ") + image.message);
  }
  if (!colour) {
    return GrayImage(static_cast<int>(image.width), static_cast<int>(image.height),
                     std::move(raster));
  }
  std::vector<Intensity> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    data[i] = to_grayscale(raster[3 * i], raster[3 * i + 1], raster[3 * i + 2]);
  }
  return GrayImage(static_cast<int>(image.width), static_cast<int>(image.height),
                   std::move(data));
}

GrayImage decode_image(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return decode_pgm(bytes);
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0) {
    return decode_png(bytes);
  }
  throw FormatError("unrecognised image format (expected P5 PGM or PNG)");
}

GrayImage load_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_image(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
  const auto bytes = encode_pgm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

GrayImage resize_bilinear(const GrayImage& img, int out_width, int out_height) {
  if (out_width < 3 || out_height < 3) {
    throw SizeError("resize target " + std::to_string(out_width) + "x" +
                    std::to_string(out_height) + " is below 3x3");
  }
  if (img.empty()) throw SizeError("cannot resize an empty image");
  if (out_width == img.width() && out_height == img.height()) return img;

  const double sx = static_cast<double>(img.width()) / out_width;
  const double sy = static_cast<double>(img.height()) / out_height;
  const int max_x = img.width() - 1;
  const int max_y = img.height() - 1;

  // Source coordinate and lerp weight per output column / row.
  struct Tap {
    int lo;
    int hi;
    double frac;
  };
  auto make_taps = [](int count, double scale, int max_index) {
    std::vector<Tap> taps(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      const double src = std::clamp((i + 0.5) * scale - 0.5, 0.0, static_cast<double>(max_index));
      const int lo = static_cast<int>(std::floor(src));
      taps[static_cast<std::size_t>(i)] = {lo, std::min(lo + 1, max_index), src - lo};
    }
    return taps;
  };
  const auto xs = make_taps(out_width, sx, max_x);
  const auto ys = make_taps(out_height, sy, max_y);

  GrayImage out(out_width, out_height);
  for (int y = 0; y < out_height; ++y) {
    const Tap& ty = ys[static_cast<std::size_t>(y)];
    for (int x = 0; x < out_width; ++x) {
      const Tap& tx = xs[static_cast<std::size_t>(x)];
      const double top = img.at(tx.lo, ty.lo) * (1.0 - tx.frac) + img.at(tx.hi, ty.lo) * tx.frac;
      const double bottom =
          img.at(tx.lo, ty.hi) * (1.0 - tx.frac) + img.at(tx.hi, ty.hi) * tx.frac;
      out.at(x, y) = round_to_intensity(top * (1.0 - ty.frac) + bottom * ty.frac);
    }
  }
  return out;
}

}  // namespace ltridp
