#pragma once

#include <vector>

#include "ltridp/image.hpp"

namespace ltridp::testing {

/// Straight-from-the-definition LTriDP: explicit neighbourhood lookups,
/// case-by-case ternary function, floating-point magnitudes and
/// power-of-two weighting. Shares no code with the library descriptor.
struct NaiveCodeMaps {
  int width = 0;
  int height = 0;
  std::vector<int> pattern1;
  std::vector<int> pattern2;
  std::vector<int> magnitude;
};

NaiveCodeMaps naive_code_maps(const GrayImage& img);

/// Neighbour-against-centre thresholding, computed the same way.
std::vector<int> naive_lbp_map(const GrayImage& img);

}  // namespace ltridp::testing
