#pragma once

#include <string>
#include <vector>

#include "sparsec/harness/config.hpp"

namespace sparsec {

// Columnar result table. Every experiment driver reduces to one or more of
// these; the writer below is the only thing that touches the filesystem, so
// determinism (bit-identical reruns for an identical config) is enforced in
// exactly one place.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

// %.12g with canonical spellings for non-finite values ("nan", "inf",
// "-inf") so output bytes do not depend on the libc.
std::string format_double(double value);

// Renders the table as CSV preceded by a '#' header block:
//
//   # artifact: <version string>
//   # config_hash: <16 hex digits>
//   # seed: <seed>
//
// Throws std::runtime_error if the file cannot be written or a row width
// disagrees with the column count.
std::string render_csv(const Table& table, const ExperimentConfig& cfg);
void write_csv(const std::string& path, const Table& table,
               const ExperimentConfig& cfg);

// JSON sidecar carrying the full canonical config plus free-form summary
// statistics, with the same artifact/hash/seed triple at the top. Key order
// is fixed, so equal inputs give equal bytes.
std::string render_summary_json(const ExperimentConfig& cfg,
                                const std::vector<std::pair<std::string, double>>& stats);
void write_summary_json(const std::string& path, const ExperimentConfig& cfg,
                        const std::vector<std::pair<std::string, double>>& stats);

}  // namespace sparsec
