#include "ltridp/pipeline.hpp"

#include <string>

#include "ltridp/errors.hpp"
#include "ltridp/preprocess.hpp"

namespace ltridp {

GrayImage preprocess(const GrayImage& img, const PipelineConfig& config) {
  GrayImage out = config.resize ? resize_bilinear(img, config.resize_width, config.resize_height) : img;
  if (config.normalize) out = minmax_normalize(out);
  if (config.equalize) out = equalize(out);
  return out;
}

FeatureVector featurize(const GrayImage& img, const PipelineConfig& config) {
  return extract_descriptor(preprocess(img, config), config.descriptor, config.bins);
}

nlohmann::json pipeline_to_json(const PipelineConfig& config) {
  return {{"descriptor", descriptor_name(config.descriptor)},
          {"descriptor_version", kDescriptorVersion},
          {"bins", bin_count(config.bins)},
          {"resize", config.resize},
          {"resize_width", config.resize_width},
          {"resize_height", config.resize_height},
          {"normalize", config.normalize},
          {"equalize", config.equalize}};
}

PipelineConfig pipeline_from_json(const nlohmann::json& doc) {
  try {
    PipelineConfig config;
    config.descriptor = descriptor_from_name(doc.at("descriptor").get<std::string>());
    const int version = doc.at("descriptor_version").get<int>();
    if (version != kDescriptorVersion) {
      throw FormatError("descriptor version " + std::to_string(version) + " is not supported (expected " +
                        std::to_string(kDescriptorVersion) + ")");
    }
    config.bins = bins_from_count(doc.at("bins").get<int>());
    config.resize = doc.at("resize").get<bool>();
    config.resize_width = doc.at("resize_width").get<int>();
    config.resize_height = doc.at("resize_height").get<int>();
    config.normalize = doc.at("normalize").get<bool>();
    config.equalize = doc.at("equalize").get<bool>();
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid pipeline configuration: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("invalid pipeline configuration: ") + e.what());
  }
}

}  // namespace ltridp
