#pragma once

#include <vector>

#include "ltridp/sample.hpp"
#include "ltridp/svm.hpp"

namespace ltridp::detail {

/// Training samples after z-scoring with a scaler fitted on them.
struct StandardizedSet {
  ScalerParams scaler;
  std::vector<FeatureVector> x;
  std::vector<int> y;
};

/// Throws DataError unless both classes are present, DimensionError on
/// ragged input.
StandardizedSet standardize_for_training(const SampleSet& samples);

}  // namespace ltridp::detail
