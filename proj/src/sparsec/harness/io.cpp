#include "sparsec/harness/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace sparsec {

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw std::runtime_error("table row width mismatch");
  }
  rows.push_back(std::move(row));
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

namespace {

void append_header_block(std::ostringstream& out, const ExperimentConfig& cfg,
                         const char* comment_prefix) {
  char hash_buf[32];
  std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  out << comment_prefix << " artifact: " << kArtifactVersion << "\n"
      << comment_prefix << " config_hash: " << hash_buf << "\n"
      << comment_prefix << " seed: " << cfg.seed << "\n";
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << body;
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace

std::string render_csv(const Table& table, const ExperimentConfig& cfg) {
  std::ostringstream out;
  append_header_block(out, cfg, "#");
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out << ",";
    out << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::runtime_error("table row width mismatch");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ",";
      out << format_double(row[i]);
    }
    out << "\n";
  }
  return out.str();
}

void write_csv(const std::string& path, const Table& table,
               const ExperimentConfig& cfg) {
  write_text_file(path, render_csv(table, cfg));
}

std::string render_summary_json(
    const ExperimentConfig& cfg,
    const std::vector<std::pair<std::string, double>>& stats) {
  char hash_buf[32];
  std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));

  nlohmann::ordered_json doc;
  doc["artifact"] = kArtifactVersion;
  doc["config_hash"] = hash_buf;
  doc["seed"] = cfg.seed;
  doc["config"] = canonical_config(cfg);
  nlohmann::ordered_json summary;
  for (const auto& [key, value] : stats) {
    // JSON numbers cannot encode nan/inf; fall back to the string spelling.
    if (std::isfinite(value)) {
      summary[key] = value;
    } else {
      summary[key] = format_double(value);
    }
  }
  doc["summary"] = std::move(summary);
  return doc.dump(2) + "\n";
}

void write_summary_json(
    const std::string& path, const ExperimentConfig& cfg,
    const std::vector<std::pair<std::string, double>>& stats) {
  write_text_file(path, render_summary_json(cfg, stats));
}

}  // namespace sparsec
