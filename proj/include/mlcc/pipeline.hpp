#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlcc/region.hpp"

namespace mlcc {

// One end-to-end run. mode selects how much of the chain executes:
//   field    ingest, rescale, evaluate the p-value field, save it
//   tree     load a saved field, rebuild the tree artifacts
//   cluster  everything
struct RunConfig {
  std::string mode = "cluster";
  std::string input;       // dataset CSV
  std::string field_path;  // saved field CSV (mode tree)
  std::string label_column;
  bool binarize_label = false;
  double scale = 0.0;               // <= 0: default for the dimensionality
  std::vector<int32_t> resolution;  // empty: default per axis
  int32_t k = 5;
  std::vector<double> ladder;  // empty: every attainable threshold
  int32_t stride = 1;
  Adjacency adjacency = Adjacency::moore;
  int32_t workers = 0;  // <= 0: hardware concurrency
  std::string outdir = ".";
  std::vector<double> svg_eps;  // region plots to emit (d <= 3 only)
  bool svg = true;
  int64_t node_budget = 1000000;
};

struct RunSummary {
  int64_t examples = 0;
  int64_t dim = 0;
  int64_t nodes = 0;
  int32_t levels = 0;
  int32_t max_clusters = 0;
  int32_t splits = 0;
  double field_ms = 0.0;
  double tree_ms = 0.0;
  double total_ms = 0.0;
  std::vector<std::string> outputs;  // paths written, in emission order
};

// Runs the configured chain, writes artifacts plus manifest.json under
// config.outdir, and returns the summary. The output directory is created
// when missing.
RunSummary run_pipeline(const RunConfig& config);

// JSON bridge used by the shared-library boundary.
RunConfig config_from_json(const std::string& json_text);
std::string summary_to_json(const RunSummary& summary);

}  // namespace mlcc
