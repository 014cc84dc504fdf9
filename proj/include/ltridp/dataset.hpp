#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ltridp/pipeline.hpp"
#include "ltridp/sample.hpp"

namespace ltridp {

struct ManifestEntry {
  std::string path;               // as written in the manifest
  std::filesystem::path resolved; // relative paths anchored at the manifest directory
  Label label = Label::NoBag;
};

/// CSV `path,label` with labels bag / nobag. An optional `path,label` header,
/// blank lines and `#` comments are skipped.
struct DatasetManifest {
  std::vector<ManifestEntry> entries;
};

/// Throws IoError if unreadable, FormatError on malformed lines or
/// duplicate paths.
DatasetManifest read_manifest(const std::filesystem::path& path);
DatasetManifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir);

struct FeatureRow {
  std::string path;
  Label label = Label::NoBag;
  FeatureVector values;
};

/// Extracted features plus the configuration that produced them.
///
/// On disk: one `# {json header}` line, then `path,label,v0,...,v(dim-1)`
/// per row. Paths containing commas or quotes are CSV-quoted.
struct FeatureStore {
  PipelineConfig config;
  std::vector<FeatureRow> rows;

  int dim() const { return config.dim(); }
  SampleSet samples() const;
};

void write_store(const FeatureStore& store, std::ostream& out);
void save_store(const FeatureStore& store, const std::filesystem::path& path);
/// Throws FormatError on header problems or rows of the wrong length.
FeatureStore parse_store(std::istream& in);
FeatureStore load_store(const std::filesystem::path& path);

struct ExtractionFailure {
  std::string path;
  std::string message;
};

struct ExtractionResult {
  FeatureStore store;
  std::vector<ExtractionFailure> failures;
};

/// Loads and featurizes every manifest entry on `jobs` worker threads.
/// Rows come back in manifest order whatever the thread count; entries that
/// fail to load are skipped and reported in `failures`.
ExtractionResult extract_manifest(const DatasetManifest& manifest, const PipelineConfig& config,
                                  int jobs);

}  // namespace ltridp
