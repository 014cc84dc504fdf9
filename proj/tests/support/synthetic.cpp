#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace ltridp::testing {

namespace fs = std::filesystem;

GrayImage random_image(int width, int height, SeededRng& rng, int lo, int hi) {
  GrayImage img(width, height);
  const auto span = static_cast<std::size_t>(hi - lo + 1);
  for (auto& px : img.pixels()) px = static_cast<Intensity>(lo + static_cast<int>(rng.index(span)));
  return img;
}

GrayImage smooth_gradient(int size, SeededRng& rng) {
  const double angle = rng.uniform() * 2.0 * std::numbers::pi;
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  const double base = 40.0 + rng.uniform() * 60.0;
  const double range = 80.0 + rng.uniform() * 80.0;
  const double wave_amp = rng.uniform() * 12.0;
  const double wave_len = size * (1.0 + rng.uniform());
  const double phase = rng.uniform() * 2.0 * std::numbers::pi;
  GrayImage img(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double t = ((x - size / 2.0) * dx + (y - size / 2.0) * dy) / size + 0.5;
      const double v = base + range * t +
                       wave_amp * std::sin(2.0 * std::numbers::pi * (x * dy - y * dx) / wave_len + phase);
      img.at(x, y) = round_to_intensity(std::clamp(v, 0.0, 255.0));
    }
  }
  return img;
}

GrayImage noise_texture(int size, SeededRng& rng) {
  const double mean = 60.0 + rng.uniform() * 120.0;
  const double spread = 20.0 + rng.uniform() * 60.0;
  const double checker = rng.uniform() < 0.5 ? rng.uniform() * 30.0 : 0.0;
  GrayImage img(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double v = mean + spread * (rng.uniform() - 0.5) * 2.0 + (((x + y) % 2) ? checker : -checker);
      img.at(x, y) = round_to_intensity(std::clamp(v, 0.0, 255.0));
    }
  }
  return img;
}

SyntheticDataset write_two_texture_dataset(const fs::path& dir, int per_class, int size,
                                           std::uint64_t seed) {
  fs::create_directories(dir / "images");
  SeededRng rng(seed);
  std::ofstream manifest(dir / "manifest.csv", std::ios::binary | std::ios::trunc);
  manifest << "path,label\n";
  SyntheticDataset out;
  out.manifest = dir / "manifest.csv";
  // Interleave the classes so manifest order is not sorted by label.
  for (int i = 0; i < per_class; ++i) {
    const std::string bag = "images/noise_" + std::to_string(i) + ".pgm";
    save_pgm(noise_texture(size, rng), dir / bag);
    manifest << bag << ",bag\n";
    ++out.positives;
    const std::string nobag = "images/smooth_" + std::to_string(i) + ".pgm";
    save_pgm(smooth_gradient(size, rng), dir / nobag);
    manifest << nobag << ",nobag\n";
    ++out.negatives;
  }
  return out;
}

SampleSet separable_blobs(int per_class, double margin, std::uint64_t seed) {
  SeededRng rng(seed);
  // Box-Muller normal draws.
  auto normal = [&rng] {
    const double u1 = std::max(rng.uniform(), 1e-300);
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };
  SampleSet out;
  // Centres at (+-2, +-1); direction u = (2,1)/sqrt5. Samples whose
  // projection strays within margin/2 of the bisector are redrawn.
  const double ux = 2.0 / std::sqrt(5.0);
  const double uy = 1.0 / std::sqrt(5.0);
  for (const int sign : {+1, -1}) {
    for (int i = 0; i < per_class;) {
      const double x = sign * 2.0 + 0.6 * normal();
      const double y = sign * 1.0 + 0.6 * normal();
      if (sign * (x * ux + y * uy) < margin / 2.0) continue;
      out.push_back({{x, y}, sign > 0 ? Label::Bag : Label::NoBag, {}});
      ++i;
    }
  }
  return out;
}

fs::path make_temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ltridp_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace ltridp::testing
