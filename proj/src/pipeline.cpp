#include "mlcc/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#include <json.hpp>

#include "mlcc/conformal.hpp"
#include "mlcc/csv.hpp"
#include "mlcc/errors.hpp"
#include "mlcc/multilevel.hpp"
#include "mlcc/preprocess.hpp"
#include "mlcc/svg.hpp"
#include "mlcc/version.hpp"

namespace mlcc {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

nlohmann::ordered_json config_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["mode"] = c.mode;
  j["input"] = c.input;
  j["field_path"] = c.field_path;
  j["label_column"] = c.label_column;
  j["binarize_label"] = c.binarize_label;
  j["scale"] = c.scale;
  j["resolution"] = c.resolution;
  j["k"] = c.k;
  j["ladder"] = c.ladder;
  j["stride"] = c.stride;
  j["adjacency"] = c.adjacency == Adjacency::moore ? "moore" : "von_neumann";
  j["workers"] = c.workers;
  j["outdir"] = c.outdir;
  j["svg_eps"] = c.svg_eps;
  j["svg"] = c.svg;
  j["node_budget"] = c.node_budget;
  return j;
}

}  // namespace

RunSummary run_pipeline(const RunConfig& config) {
  if (config.mode != "cluster" && config.mode != "field" && config.mode != "tree")
    fail(errc::invalid_argument, "unknown mode '" + config.mode + "'");
  if (config.input.empty()) fail(errc::invalid_argument, "an input dataset is required");
  if (config.mode == "tree" && config.field_path.empty())
    fail(errc::invalid_argument, "mode tree needs a saved field");
  if (config.node_budget < 1) fail(errc::invalid_argument, "node budget must be positive");

  std::error_code ec;
  std::filesystem::create_directories(config.outdir, ec);
  if (ec) fail(errc::io, "cannot create '" + config.outdir + "': " + ec.message());

  const auto t_start = Clock::now();
  RunSummary summary;

  IngestOptions ingest;
  ingest.label_column = config.label_column;
  ingest.binarize_label = config.binarize_label;
  const Dataset raw = ingest_csv(config.input, ingest);
  if (raw.size() == 0) fail(errc::empty_input, config.input + ": no data rows");
  const int64_t l = raw.size();
  const auto d = static_cast<int>(raw.dim());
  summary.examples = l;
  summary.dim = d;

  PValueField field = [&] {
    if (config.mode == "tree") {
      PValueField loaded = read_field_csv(config.field_path);
      if (loaded.lattice().dim() != d)
        fail(errc::shape_mismatch, "field lattice and dataset dimensionality differ");
      if (loaded.denominator() != l + 1)
        fail(errc::shape_mismatch, "field was computed from a different number of examples");
      for (int a = 0; a < d; ++a) {
        if (loaded.lattice().lower()[a] != 0.0 ||
            loaded.lattice().upper()[a] != loaded.lattice().upper()[0])
          fail(errc::invalid_argument, "field lattice is not a rescaled pipeline box");
      }
      return loaded;
    }

    const double scale = config.scale > 0.0 ? config.scale : default_scale(d);
    std::vector<int32_t> resolution = config.resolution;
    if (resolution.empty())
      resolution.assign(d, static_cast<int32_t>(std::max<int64_t>(2, std::llround(scale))));
    if (static_cast<int>(resolution.size()) != d)
      fail(errc::shape_mismatch, "one resolution entry per feature required");
    int64_t nodes = 1;
    for (int32_t r : resolution) {
      if (r < 1) fail(errc::invalid_argument, "resolution entries must be >= 1");
      nodes *= r;
      if (nodes > config.node_budget) break;
    }
    if (nodes > config.node_budget)
      fail(errc::budget_exceeded,
           "lattice would have more than " + std::to_string(config.node_budget) +
               " nodes; reduce the per-axis resolution or raise the budget");

    const RescaleParams params = fit_rescale(raw, scale);
    const Dataset rescaled = apply_rescale(params, raw);
    Lattice lattice(std::move(resolution), std::vector<double>(d, 0.0),
                    std::vector<double>(d, scale));
    const auto t_field = Clock::now();
    PValueField computed =
        mlcc::field(rescaled, lattice, NcmConfig{config.k}, config.workers);
    summary.field_ms = ms_since(t_field);
    return computed;
  }();
  summary.nodes = field.size();

  // The rescale is refit from the raw data, so a reloaded field sees the
  // same projected coordinates as the run that wrote it.
  const double scale = field.lattice().upper()[0];
  const Dataset rescaled = apply_rescale(fit_rescale(raw, scale), raw);

  if (config.mode != "tree") {
    const std::string path = join(config.outdir, "field.csv");
    write_field_csv(path, field);
    summary.outputs.push_back(path);
  }

  if (config.mode != "field") {
    const EpsilonLadder ladder = config.ladder.empty()
                                     ? default_ladder(l, config.stride)
                                     : EpsilonLadder(config.ladder);
    const auto t_tree = Clock::now();
    const ClusterTree tree = build_tree(field, ladder, config.adjacency);
    const auto trajs = trajectories(rescaled, tree);
    const Dendrogram dendro = leaf_order(trajs, tree);
    summary.tree_ms = ms_since(t_tree);

    summary.levels = static_cast<int32_t>(tree.levels.size());
    summary.splits = static_cast<int32_t>(tree.splits.size());
    for (const TreeLevel& level : tree.levels)
      summary.max_clusters =
          std::max(summary.max_clusters, static_cast<int32_t>(level.clusters.size()));

    const std::string tree_path = join(config.outdir, "tree.txt");
    write_tree_doc(tree_path, tree, trajs, dendro);
    summary.outputs.push_back(tree_path);

    const std::string counts_path = join(config.outdir, "cluster_counts.csv");
    write_cluster_counts_csv(counts_path, cluster_counts(tree));
    summary.outputs.push_back(counts_path);

    if (config.svg) {
      if (d == 2 || d == 3) {
        for (double eps : config.svg_eps) {
          const RegionOfConformity region = region_at(field, eps, config.adjacency);
          const std::string path =
              join(config.outdir, "region_" + format_double(eps) + ".svg");
          write_text_file(path, region_svg(field, region, rescaled));
          summary.outputs.push_back(path);
        }
      }
      const std::string dendro_path = join(config.outdir, "dendrogram.svg");
      write_text_file(dendro_path, dendrogram_svg(tree, trajs, dendro, rescaled.labels()));
      summary.outputs.push_back(dendro_path);
    }
  } else if (!config.svg_eps.empty() && config.svg && (d == 2 || d == 3)) {
    for (double eps : config.svg_eps) {
      const RegionOfConformity region = region_at(field, eps, config.adjacency);
      const std::string path = join(config.outdir, "region_" + format_double(eps) + ".svg");
      write_text_file(path, region_svg(field, region, rescaled));
      summary.outputs.push_back(path);
    }
  }

  summary.total_ms = ms_since(t_start);

  nlohmann::ordered_json manifest;
  manifest["version"] = kVersion;
  manifest["config"] = config_json(config);
  manifest["examples"] = summary.examples;
  manifest["dim"] = summary.dim;
  manifest["nodes"] = summary.nodes;
  manifest["levels"] = summary.levels;
  manifest["max_clusters"] = summary.max_clusters;
  manifest["splits"] = summary.splits;
  manifest["field_ms"] = summary.field_ms;
  manifest["tree_ms"] = summary.tree_ms;
  manifest["total_ms"] = summary.total_ms;
  manifest["outputs"] = summary.outputs;
  const std::string manifest_path = join(config.outdir, "manifest.json");
  write_text_file(manifest_path, manifest.dump(2) + "\n");
  summary.outputs.push_back(manifest_path);

  return summary;
}

RunConfig config_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse, std::string("bad run config: ") + e.what());
  }

  RunConfig config;
  try {
    config.mode = j.value("mode", config.mode);
    config.input = j.value("input", config.input);
    config.field_path = j.value("field_path", config.field_path);
    config.label_column = j.value("label_column", config.label_column);
    config.binarize_label = j.value("binarize_label", config.binarize_label);
    config.scale = j.value("scale", config.scale);
    config.resolution = j.value("resolution", config.resolution);
    config.k = j.value("k", config.k);
    config.ladder = j.value("ladder", config.ladder);
    config.stride = j.value("stride", config.stride);
    const std::string adjacency = j.value("adjacency", std::string("moore"));
    if (adjacency == "moore")
      config.adjacency = Adjacency::moore;
    else if (adjacency == "von_neumann" || adjacency == "vonneumann")
      config.adjacency = Adjacency::von_neumann;
    else
      fail(errc::invalid_argument, "unknown adjacency '" + adjacency + "'");
    config.workers = j.value("workers", config.workers);
    config.outdir = j.value("outdir", config.outdir);
    config.svg_eps = j.value("svg_eps", config.svg_eps);
    config.svg = j.value("svg", config.svg);
    config.node_budget = j.value("node_budget", config.node_budget);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse, std::string("bad run config: ") + e.what());
  }
  return config;
}

std::string summary_to_json(const RunSummary& summary) {
  nlohmann::ordered_json j;
  j["examples"] = summary.examples;
  j["dim"] = summary.dim;
  j["nodes"] = summary.nodes;
  j["levels"] = summary.levels;
  j["max_clusters"] = summary.max_clusters;
  j["splits"] = summary.splits;
  j["field_ms"] = summary.field_ms;
  j["tree_ms"] = summary.tree_ms;
  j["total_ms"] = summary.total_ms;
  j["outputs"] = summary.outputs;
  return j.dump(2) + "\n";
}

}  // namespace mlcc
