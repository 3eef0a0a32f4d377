#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mlcc/model.hpp"
#include "mlcc/multilevel.hpp"

namespace mlcc {

// Shortest decimal form that parses back to the identical double. All
// numeric text output goes through this so artifacts are byte-reproducible.
std::string format_double(double v);

// Strict full-token parse; `where` names the offending location on failure.
double parse_double(const std::string& token, const std::string& where);
int64_t parse_int(const std::string& token, const std::string& where);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column position by name, -1 when absent.
  int64_t column(const std::string& name) const;
};

// RFC-4180 style: comma separated, double quotes escape embedded commas,
// quotes and newlines; a header row is required. Malformed input reports the
// 1-based row number.
CsvTable parse_csv(const std::string& text, const std::string& context);
CsvTable read_csv(const std::string& path);

struct IngestOptions {
  // Empty picks the generator's own "component" column when the file has
  // one; otherwise no labels.
  std::string label_column;
  bool binarize_label = false;  // numeric label -> "1" iff value > column mean
  std::string noise_column = "is_noise";  // consumed as flags when present
};

// Every column except the label and noise columns is a numeric feature, in
// header order.
Dataset ingest_csv(const std::string& path, const IngestOptions& options = {});

// Columns x1..xd, then the label column (if any), then is_noise (if any).
void write_dataset_csv(const std::string& path, const Dataset& dataset);
std::string dataset_csv_string(const Dataset& dataset);

// Columns index, i0.., x0.., p_num, p_den, p in node order. Reading
// reconstructs the lattice exactly (bounds from the corner nodes).
void write_field_csv(const std::string& path, const PValueField& field);
std::string field_csv_string(const PValueField& field);
PValueField read_field_csv(const std::string& path);
PValueField parse_field_csv(const std::string& text, const std::string& context);

// Columns eps, clusters.
void write_cluster_counts_csv(const std::string& path,
                              const std::vector<std::pair<double, int32_t>>& counts);

// Line-oriented dump of the whole tree: per level, every cluster with its
// parent, node count, member examples and split/death flags; then the leaf
// order and per-example death levels.
std::string tree_doc_string(const ClusterTree& tree,
                            const std::vector<PointTrajectory>& trajectories,
                            const Dendrogram& dendrogram);
void write_tree_doc(const std::string& path, const ClusterTree& tree,
                    const std::vector<PointTrajectory>& trajectories,
                    const Dendrogram& dendrogram);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mlcc
