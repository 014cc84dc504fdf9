#include "ltridp/model_file.hpp"

#include <fstream>
#include <sstream>

#include "ltridp/errors.hpp"

namespace ltridp {

nlohmann::json model_file_to_json(const ModelFile& file) {
  if (file.model.feature_dim() != static_cast<std::size_t>(file.pipeline.dim())) {
    throw DimensionError("model dim " + std::to_string(file.model.feature_dim()) +
                         " does not match pipeline dim " + std::to_string(file.pipeline.dim()));
  }
  nlohmann::json doc = model_to_json(file.model);
  doc["format_version"] = kModelFormatVersion;
  doc["label_names"] = {{"positive", "bag"}, {"negative", "nobag"}};
  doc["bins"] = bin_count(file.pipeline.bins);
  doc["pipeline"] = pipeline_to_json(file.pipeline);
  return doc;
}

ModelFile model_file_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("format_version") ||
      !doc.at("format_version").is_number_integer()) {
    throw FormatError("model file lacks an integer format_version");
  }
  if (doc.at("format_version").get<int>() != kModelFormatVersion) {
    throw FormatError("unsupported model format_version " + doc.at("format_version").dump());
  }
  if (!doc.contains("pipeline")) throw FormatError("model file lacks its pipeline configuration");
  ModelFile file;
  file.pipeline = pipeline_from_json(doc.at("pipeline"));
  file.model = model_from_json(doc);
  if (file.model.feature_dim() != static_cast<std::size_t>(file.pipeline.dim())) {
    throw FormatError("model feature_dim disagrees with its pipeline configuration");
  }
  return file;
}

std::string serialize_model_file(const ModelFile& file) { return model_file_to_json(file).dump(2) + "\n"; }

void save_model_file(const ModelFile& file, const std::filesystem::path& path) {
  const std::string text = serialize_model_file(file);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write model '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("failed writing model '" + path.string() + "'");
}

ModelFile load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("model '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return model_file_from_json(doc);
}

}  // namespace ltridp
