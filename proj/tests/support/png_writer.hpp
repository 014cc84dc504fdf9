#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace ltridp::testing {

/// Writes an 8-bit PNG with 1 (gray) or 3 (RGB) interleaved channels.
void write_png(const std::filesystem::path& path, int width, int height, int channels,
               const std::vector<std::uint8_t>& pixels);

}  // namespace ltridp::testing
