#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "ltridp/pipeline.hpp"
#include "ltridp/svm.hpp"

namespace ltridp {

inline constexpr int kModelFormatVersion = 1;

/// A trained classifier bound to the feature pipeline it was trained on.
struct ModelFile {
  SvmModel model;
  PipelineConfig pipeline;
};

/// {format_version, label_names, feature_dim, bins, pipeline, solver, kernel,
///  hyperparameters, scaler, bias, weights | support_vectors}
nlohmann::json model_file_to_json(const ModelFile& file);
ModelFile model_file_from_json(const nlohmann::json& doc);

/// Serialized text is a pure function of the model, so equal models give
/// byte-identical files.
std::string serialize_model_file(const ModelFile& file);
void save_model_file(const ModelFile& file, const std::filesystem::path& path);
ModelFile load_model_file(const std::filesystem::path& path);

}  // namespace ltridp
