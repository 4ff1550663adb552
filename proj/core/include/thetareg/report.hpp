#pragma once

#include <map>
#include <string>
#include <vector>

#include "thetareg/numeric.hpp"

namespace thetareg {

/// Run provenance embedded at the top of every report file. Timing is
/// reported on stderr only, so files stay byte-identical across reruns.
struct RunManifest {
  std::string command;
  std::string config;       // flattened flag/config description
  std::string config_hash;  // FNV-1a 64 of the config string, hex
  u64 seed = 0;
  std::string version;
  int workers = 1;
  std::vector<std::string> outputs;

  std::string to_json() const;
  static RunManifest from_json(const std::string& json);
};

std::string fnv1a_hex(const std::string& data);
std::string version_string();

/// CSV with a leading "# manifest {json}" line.
class CsvReport {
 public:
  CsvReport(RunManifest manifest, std::vector<std::string> columns);
  void add_row(const std::vector<std::string>& cells);
  void write(const std::string& path) const;
  std::string serialize() const;

  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

 private:
  RunManifest manifest_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

struct ParsedReport {
  RunManifest manifest;
  std::vector<std::string> columns;
  std::vector<std::map<std::string, std::string>> rows;
};

ParsedReport parse_csv_report(const std::string& text);

/// JSON-lines: first line the manifest object, then one object per row.
class JsonlReport {
 public:
  explicit JsonlReport(RunManifest manifest) : manifest_(std::move(manifest)) {}
  void add(const std::string& json_object) { lines_.push_back(json_object); }
  void write(const std::string& path) const;
  std::string serialize() const;

 private:
  RunManifest manifest_;
  std::vector<std::string> lines_;
};

ParsedReport parse_jsonl_report(const std::string& text);

std::string format_double(double v);

}  // namespace thetareg
