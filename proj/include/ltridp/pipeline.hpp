#pragma once

#include "json.hpp"
#include "ltridp/descriptor.hpp"
#include "ltridp/image.hpp"

namespace ltridp {

inline constexpr int kCanonicalSize = 256;
inline constexpr int kDescriptorVersion = 1;

/// Everything that determines the feature of an image. Stored with every
/// feature store and model so that prediction reproduces training features.
struct PipelineConfig {
  DescriptorKind descriptor = DescriptorKind::LTriDP;
  Bins bins = Bins::Full;
  bool resize = true;
  int resize_width = kCanonicalSize;
  int resize_height = kCanonicalSize;
  bool normalize = false;
  bool equalize = true;

  int dim() const { return feature_dim(descriptor, bins); }
  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// resize (optional) -> min-max normalize (optional) -> equalize (optional).
GrayImage preprocess(const GrayImage& img, const PipelineConfig& config);

/// preprocess followed by the configured descriptor.
FeatureVector featurize(const GrayImage& img, const PipelineConfig& config);

nlohmann::json pipeline_to_json(const PipelineConfig& config);
/// Throws FormatError on missing or invalid fields.
PipelineConfig pipeline_from_json(const nlohmann::json& doc);

}  // namespace ltridp
