#include "thetareg/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace thetareg {

using nlohmann::json;

std::string fnv1a_hex(const std::string& data) {
  u64 h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
  return buf;
}

std::string version_string() { return "0.3.0"; }

std::string RunManifest::to_json() const {
  json j{{"command", command}, {"config", config},   {"config_hash", config_hash},
         {"seed", seed},       {"version", version}, {"workers", workers},
         {"outputs", outputs}};
  return j.dump();
}

RunManifest RunManifest::from_json(const std::string& text) {
  json j = json::parse(text);
  RunManifest m;
  m.command = j.value("command", "");
  m.config = j.value("config", "");
  m.config_hash = j.value("config_hash", "");
  m.seed = j.value("seed", (u64)0);
  m.version = j.value("version", "");
  m.workers = j.value("workers", 1);
  if (j.contains("outputs")) m.outputs = j["outputs"].get<std::vector<std::string>>();
  return m;
}

CsvReport::CsvReport(RunManifest manifest, std::vector<std::string> columns)
    : manifest_(std::move(manifest)), columns_(std::move(columns)) {}

void CsvReport::add_row(const std::vector<std::string>& cells) { rows_.push_back(cells); }

std::string CsvReport::serialize() const {
  std::ostringstream out;
  out << "# manifest " << manifest_.to_json() << "\n";
  for (size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << "\n";
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

void CsvReport::write(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write report file: " + path);
  f << serialize();
}

ParsedReport parse_csv_report(const std::string& text) {
  ParsedReport out;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# manifest ", 0) == 0) {
      out.manifest = RunManifest::from_json(line.substr(11));
      continue;
    }
    if (line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!have_header) {
      out.columns = cells;
      have_header = true;
      continue;
    }
    std::map<std::string, std::string> row;
    for (size_t i = 0; i < cells.size() && i < out.columns.size(); ++i)
      row[out.columns[i]] = cells[i];
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string JsonlReport::serialize() const {
  std::ostringstream out;
  out << R"({"type":"manifest","manifest":)" << manifest_.to_json() << "}\n";
  for (const auto& l : lines_) out << l << "\n";
  return out.str();
}

void JsonlReport::write(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write report file: " + path);
  f << serialize();
}

ParsedReport parse_jsonl_report(const std::string& text) {
  ParsedReport out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (j.value("type", "") == "manifest") {
      out.manifest = RunManifest::from_json(j["manifest"].dump());
      continue;
    }
    std::map<std::string, std::string> row;
    for (auto it = j.begin(); it != j.end(); ++it)
      row[it.key()] = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace thetareg
