#include "ltridp/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "ltridp/errors.hpp"
#include "ltridp/text_format.hpp"

namespace ltridp {

namespace {

constexpr const char* kStoreFormat = "ltridp-feature-store";
constexpr int kStoreVersion = 1;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// Splits one CSV record; supports double-quoted fields with "" escapes.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        current += ch;
      }
    } else if (ch == '"' && current.empty()) {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  if (quoted) throw FormatError("unterminated quoted field");
  fields.push_back(std::move(current));
  return fields;
}

}  // namespace

DatasetManifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir) {
  DatasetManifest manifest;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    // The label is the last field so that paths may contain commas.
    const auto comma = content.rfind(',');
    if (comma == std::string::npos) {
      throw FormatError("manifest line " + std::to_string(line_no) + ": expected 'path,label'");
    }
    std::string path = trim(std::string_view(content).substr(0, comma));
    const std::string label = trim(std::string_view(content).substr(comma + 1));
    if (path.size() >= 2 && path.front() == '"' && path.back() == '"') {
      path = split_csv(path).front();
    }
    if (manifest.entries.empty() && seen.empty() && path == "path" && label == "label") continue;
    if (path.empty()) throw FormatError("manifest line " + std::to_string(line_no) + ": empty path");
    ManifestEntry entry;
    try {
      entry.label = label_from_name(label);
    } catch (const DomainError& e) {
      throw FormatError("manifest line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!seen.insert(path).second) {
      throw FormatError("manifest line " + std::to_string(line_no) + ": duplicate path '" + path + "'");
    }
    const std::filesystem::path p(path);
    entry.resolved = p.is_absolute() ? p : base_dir / p;
    entry.path = std::move(path);
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
  return parse_manifest(in, path.parent_path());
}

SampleSet FeatureStore::samples() const {
  SampleSet out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back({row.values, row.label, row.path});
  return out;
}

void write_store(const FeatureStore& store, std::ostream& out) {
  nlohmann::json header = {{"format", kStoreFormat},
                           {"format_version", kStoreVersion},
                           {"dim", store.dim()},
                           {"pipeline", pipeline_to_json(store.config)}};
  out << "# " << header.dump() << "\n";
  for (const auto& row : store.rows) {
    if (row.values.size() != static_cast<std::size_t>(store.dim())) {
      throw DimensionError("row '" + row.path + "' has " + std::to_string(row.values.size()) +
                           " values, store dim is " + std::to_string(store.dim()));
    }
    out << quote_if_needed(row.path) << ',' << label_name(row.label);
    for (const double v : row.values) out << ',' << format_double(v);
    out << '\n';
  }
}

void save_store(const FeatureStore& store, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write feature store '" + path.string() + "'");
  write_store(store, out);
  if (!out) throw IoError("failed writing feature store '" + path.string() + "'");
}

FeatureStore parse_store(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw FormatError("feature store must start with a '# {json}' header line");
  }
  FeatureStore store;
  try {
    const auto header = nlohmann::json::parse(line.substr(2));
    if (header.at("format").get<std::string>() != kStoreFormat) {
      throw FormatError("not a feature store");
    }
    if (header.at("format_version").get<int>() != kStoreVersion) {
      throw FormatError("unsupported feature store version");
    }
    store.config = pipeline_from_json(header.at("pipeline"));
    if (header.at("dim").get<int>() != store.dim()) {
      throw FormatError("header dim disagrees with its pipeline configuration");
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid feature store header: ") + e.what());
  }

  const auto dim = static_cast<std::size_t>(store.dim());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != dim + 2) {
      throw FormatError("feature store line " + std::to_string(line_no) + ": " +
                        std::to_string(fields.size() - 2) + " values, expected " + std::to_string(dim));
    }
    FeatureRow row;
    row.path = std::move(fields[0]);
    try {
      row.label = label_from_name(fields[1]);
    } catch (const DomainError& e) {
      throw FormatError("feature store line " + std::to_string(line_no) + ": " + e.what());
    }
    row.values.reserve(dim);
    for (std::size_t k = 2; k < fields.size(); ++k) row.values.push_back(parse_double(fields[k]));
    store.rows.push_back(std::move(row));
  }
  return store;
}

FeatureStore load_store(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open feature store '" + path.string() + "'");
  return parse_store(in);
}

ExtractionResult extract_manifest(const DatasetManifest& manifest, const PipelineConfig& config,
                                  int jobs) {
  const std::size_t n = manifest.entries.size();
  struct Slot {
    bool ok = false;
    FeatureVector values;
    std::string error;
  };
  std::vector<Slot> slots(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        slots[i].values = featurize(load_image(manifest.entries[i].resolved), config);
        slots[i].ok = true;
      } catch (const Error& e) {
        slots[i].error = e.what();
      }
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }

  ExtractionResult result;
  result.store.config = config;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& entry = manifest.entries[i];
    if (slots[i].ok) {
      result.store.rows.push_back({entry.path, entry.label, std::move(slots[i].values)});
    } else {
      result.failures.push_back({entry.path, std::move(slots[i].error)});
    }
  }
  return result;
}

}  // namespace ltridp
