// Command-line front end. Everything goes through the shared library's C
// interface; this file only parses flags, shuttles JSON and formats output.
#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlcc/mlcc.h"

namespace {

int report_failure(mlcc_status status) {
  std::cerr << "error: " << mlcc_last_error() << "\n";
  return static_cast<int>(status);
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// "50x50", "50,50" or a single entry; empty input gives an empty list.
std::vector<int32_t> parse_resolution(const std::string& text) {
  std::vector<int32_t> out;
  if (text.empty()) return out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t sep = text.find_first_of("x,X", pos);
    if (sep == std::string::npos) sep = text.size();
    const std::string token = text.substr(pos, sep - pos);
    int32_t v = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size() || v < 1)
      throw CLI::ValidationError("resolution", "'" + text + "' is not a grid size");
    out.push_back(v);
    if (sep == text.size()) break;
    pos = sep + 1;
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  if (text.empty()) return out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t sep = text.find(',', pos);
    if (sep == std::string::npos) sep = text.size();
    const std::string token = text.substr(pos, sep - pos);
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
      throw CLI::ValidationError(flag, "'" + token + "' is not a number");
    out.push_back(v);
    if (sep == text.size()) break;
    pos = sep + 1;
  }
  return out;
}

std::vector<int32_t> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int32_t> out;
  for (double v : parse_double_list(text, flag)) out.push_back(static_cast<int32_t>(v));
  return out;
}

struct DatasetHandle {
  mlcc_dataset* ptr = nullptr;
  ~DatasetHandle() { mlcc_dataset_free(ptr); }
};
struct FieldHandle {
  mlcc_field* ptr = nullptr;
  ~FieldHandle() { mlcc_field_free(ptr); }
};
struct TreeHandle {
  mlcc_tree* ptr = nullptr;
  ~TreeHandle() { mlcc_tree_free(ptr); }
};
struct HcHandle {
  mlcc_hc* ptr = nullptr;
  ~HcHandle() { mlcc_hc_free(ptr); }
};

// Shared flags of the pipeline-backed subcommands.
struct PipelineOptions {
  std::string input;
  std::string field_path;
  std::string label;
  bool binarize = false;
  double scale = 0.0;
  std::string resolution;
  int32_t k = 5;
  std::string ladder;
  int32_t stride = 1;
  std::string adjacency = "moore";
  int32_t workers = 0;
  std::string outdir = "mlcc-out";
  std::string svg_eps;
  bool no_svg = false;
  int64_t budget = 1000000;
};

void add_pipeline_options(CLI::App* cmd, PipelineOptions& o, bool needs_field) {
  cmd->add_option("--input", o.input, "dataset CSV (header row required)")
      ->required()
      ->envname("MLCC_INPUT");
  if (needs_field)
    cmd->add_option("--field", o.field_path, "saved p-value field CSV")
        ->required()
        ->envname("MLCC_FIELD");
  cmd->add_option("--label", o.label, "label column name (evaluation only)")
      ->envname("MLCC_LABEL");
  cmd->add_flag("--binarize", o.binarize,
                "threshold a numeric label column at its mean")
      ->envname("MLCC_BINARIZE");
  cmd->add_option("--scale", o.scale, "rescale target S, features map onto [0,S]")
      ->envname("MLCC_SCALE");
  cmd->add_option("--resolution", o.resolution, "grid size per axis, e.g. 50x50")
      ->envname("MLCC_RESOLUTION");
  cmd->add_option("--k", o.k, "neighbor count of the nonconformity measure")
      ->envname("MLCC_K");
  cmd->add_option("--ladder", o.ladder,
                  "explicit significance levels, e.g. 0.05,0.1,0.2")
      ->envname("MLCC_LADDER");
  cmd->add_option("--stride", o.stride, "subsample the default level ladder")
      ->envname("MLCC_STRIDE");
  cmd->add_option("--adjacency", o.adjacency, "moore or vonneumann")
      ->envname("MLCC_ADJACENCY");
  cmd->add_option("--workers", o.workers, "threads for the field evaluation (0 = all)")
      ->envname("MLCC_WORKERS");
  cmd->add_option("--outdir", o.outdir, "output directory")->envname("MLCC_OUTDIR");
  cmd->add_option("--eps", o.svg_eps, "levels to plot as region SVGs, e.g. 0.05,0.2")
      ->envname("MLCC_EPS");
  cmd->add_flag("--no-svg", o.no_svg, "skip SVG emission")->envname("MLCC_NO_SVG");
  cmd->add_option("--budget", o.budget, "maximum lattice node count")
      ->envname("MLCC_BUDGET");
}

int run_pipeline_command(const std::string& mode, const PipelineOptions& o) {
  nlohmann::json config;
  config["mode"] = mode;
  config["input"] = o.input;
  config["field_path"] = o.field_path;
  config["label_column"] = o.label;
  config["binarize_label"] = o.binarize;
  config["scale"] = o.scale;
  config["resolution"] = parse_resolution(o.resolution);
  config["k"] = o.k;
  config["ladder"] = parse_double_list(o.ladder, "--ladder");
  config["stride"] = o.stride;
  config["adjacency"] = o.adjacency == "vonneumann" ? "von_neumann" : o.adjacency;
  config["workers"] = o.workers;
  config["outdir"] = o.outdir;
  config["svg_eps"] = parse_double_list(o.svg_eps, "--eps");
  config["svg"] = !o.no_svg;
  config["node_budget"] = o.budget;

  char* summary = nullptr;
  const mlcc_status status = mlcc_pipeline_run(config.dump().c_str(), &summary);
  if (status != MLCC_OK) return report_failure(status);
  std::cout << summary;
  mlcc_string_free(summary);
  return 0;
}

// Ingest + rescale + field evaluation for the subcommands that need the
// field in memory rather than on disk.
int load_and_compute(const PipelineOptions& o, DatasetHandle& rescaled, FieldHandle& field,
                     bool want_field) {
  DatasetHandle raw;
  mlcc_status status = mlcc_dataset_from_csv(
      o.input.c_str(), o.label.empty() ? nullptr : o.label.c_str(), o.binarize ? 1 : 0,
      &raw.ptr);
  if (status != MLCC_OK) return report_failure(status);

  const auto d = static_cast<int32_t>(mlcc_dataset_dim(raw.ptr));
  const double scale = o.scale > 0.0 ? o.scale : mlcc_default_scale(d);
  status = mlcc_rescale(raw.ptr, scale, &rescaled.ptr);
  if (status != MLCC_OK) return report_failure(status);
  if (!want_field) return 0;

  if (!o.field_path.empty()) {
    status = mlcc_field_load_csv(o.field_path.c_str(), &field.ptr);
    if (status != MLCC_OK) return report_failure(status);
    return 0;
  }

  std::vector<int32_t> resolution = parse_resolution(o.resolution);
  if (resolution.empty())
    resolution.assign(d, static_cast<int32_t>(scale < 2.0 ? 2.0 : scale + 0.5));
  if (resolution.size() == 1 && d > 1) resolution.assign(d, resolution[0]);
  int64_t nodes = 1;
  for (int32_t r : resolution) nodes *= r;
  if (nodes > o.budget) {
    std::cerr << "error: lattice would have " << nodes << " nodes, over the budget of "
              << o.budget << "; reduce --resolution or raise --budget\n";
    return static_cast<int>(MLCC_ERROR_BUDGET);
  }
  const std::vector<double> lower(d, 0.0);
  const std::vector<double> upper(d, scale);
  status = mlcc_field_compute(rescaled.ptr, resolution.data(), lower.data(), upper.data(),
                              o.k, o.workers, &field.ptr);
  if (status != MLCC_OK) return report_failure(status);
  return 0;
}

int run_synth(uint64_t seed, double noise, int32_t size, double inflation,
              const std::string& output) {
  DatasetHandle dataset;
  mlcc_status status = mlcc_synth(seed, noise, size, inflation, &dataset.ptr);
  if (status != MLCC_OK) return report_failure(status);
  status = mlcc_dataset_save_csv(dataset.ptr, output.c_str());
  if (status != MLCC_OK) return report_failure(status);
  std::cout << "wrote " << mlcc_dataset_size(dataset.ptr) << " examples to " << output
            << "\n";
  return 0;
}

int run_hc(const PipelineOptions& o, int32_t cut, const std::string& merges_path,
           const std::string& cut_path) {
  DatasetHandle rescaled;
  FieldHandle unused;
  const int rc = load_and_compute(o, rescaled, unused, false);
  if (rc != 0) return rc;

  HcHandle hc;
  mlcc_status status = mlcc_hc_build(rescaled.ptr, &hc.ptr);
  if (status != MLCC_OK) return report_failure(status);

  if (!merges_path.empty()) {
    std::string csv = "step,a,b,distance\n";
    const int64_t m = mlcc_hc_num_merges(hc.ptr);
    for (int64_t i = 0; i < m; ++i) {
      int32_t a = 0, b = 0;
      double dist = 0.0;
      status = mlcc_hc_merge_at(hc.ptr, i, &a, &b, &dist);
      if (status != MLCC_OK) return report_failure(status);
      csv += std::to_string(i) + "," + std::to_string(a) + "," + std::to_string(b) + "," +
             fmt(dist) + "\n";
    }
    std::ofstream out(merges_path, std::ios::binary | std::ios::trunc);
    out << csv;
    if (!out) {
      std::cerr << "error: cannot write " << merges_path << "\n";
      return static_cast<int>(MLCC_ERROR_IO);
    }
    std::cout << "wrote merges to " << merges_path << "\n";
  }

  if (cut > 0) {
    const int64_t n = mlcc_dataset_size(rescaled.ptr);
    std::vector<int32_t> labels(n);
    status = mlcc_hc_cut(hc.ptr, cut, labels.data());
    if (status != MLCC_OK) return report_failure(status);
    if (!cut_path.empty()) {
      std::string csv = "example,cluster\n";
      for (int64_t i = 0; i < n; ++i)
        csv += std::to_string(i) + "," + std::to_string(labels[i]) + "\n";
      std::ofstream out(cut_path, std::ios::binary | std::ios::trunc);
      out << csv;
      if (!out) {
        std::cerr << "error: cannot write " << cut_path << "\n";
        return static_cast<int>(MLCC_ERROR_IO);
      }
      std::cout << "wrote " << cut << "-cluster cut to " << cut_path << "\n";
    }
  }

  // Purity whenever labels are present (explicit --label or the recognized
  // generator column); with an explicit flag a failure is an error.
  double average = 0.0;
  int32_t clusters = 0;
  int warning = 0;
  status = mlcc_hc_purity(hc.ptr, rescaled.ptr, &average, &clusters, &warning);
  if (status == MLCC_OK)
    std::cout << "purity " << fmt(average) << " clusters " << clusters << " warning "
              << warning << "\n";
  else if (!o.label.empty())
    return report_failure(status);
  return 0;
}

int run_eval(const PipelineOptions& o, bool want_auc, bool want_purity) {
  if (!want_auc && !want_purity) {
    std::cerr << "error: pass --auc and/or --purity\n";
    return static_cast<int>(MLCC_ERROR_VALIDATION);
  }
  DatasetHandle rescaled;
  FieldHandle field;
  const int rc = load_and_compute(o, rescaled, field, true);
  if (rc != 0) return rc;

  if (want_auc) {
    double auc = 0.0;
    int64_t positives = 0, negatives = 0;
    const mlcc_status status =
        mlcc_anomaly_auc(field.ptr, rescaled.ptr, &auc, &positives, &negatives);
    if (status != MLCC_OK) return report_failure(status);
    std::cout << "auc " << fmt(auc) << " positives " << positives << " negatives "
              << negatives << "\n";
  }

  if (want_purity) {
    const std::vector<double> ladder = parse_double_list(o.ladder, "--ladder");
    TreeHandle tree;
    mlcc_status status = mlcc_tree_build(
        field.ptr, ladder.empty() ? nullptr : ladder.data(),
        static_cast<int32_t>(ladder.size()), o.stride,
        o.adjacency == "vonneumann" || o.adjacency == "von_neumann" ? 0 : 1, &tree.ptr);
    if (status != MLCC_OK) return report_failure(status);
    double average = 0.0;
    int32_t clusters = 0;
    int warning = 0;
    status = mlcc_tree_purity(tree.ptr, rescaled.ptr, &average, &clusters, &warning);
    if (status != MLCC_OK) return report_failure(status);
    std::cout << "purity " << fmt(average) << " clusters " << clusters << " warning "
              << warning << "\n";
  }
  return 0;
}

int run_bench(const PipelineOptions& o, const std::string& workers_list) {
  DatasetHandle rescaled;
  FieldHandle baseline;
  PipelineOptions base = o;
  base.workers = 1;
  const int rc = load_and_compute(base, rescaled, baseline, true);
  if (rc != 0) return rc;

  std::vector<int32_t> workers = parse_int_list(workers_list, "--workers-list");
  if (workers.empty()) workers = {1, 2, 4, 0};

  const auto d = static_cast<int32_t>(mlcc_dataset_dim(rescaled.ptr));
  const double scale = o.scale > 0.0 ? o.scale : mlcc_default_scale(d);
  std::vector<int32_t> resolution = parse_resolution(o.resolution);
  if (resolution.empty())
    resolution.assign(d, static_cast<int32_t>(scale < 2.0 ? 2.0 : scale + 0.5));
  if (resolution.size() == 1 && d > 1) resolution.assign(d, resolution[0]);
  const std::vector<double> lower(d, 0.0);
  const std::vector<double> upper(d, scale);

  std::cout << "workers,ms,identical\n";
  for (int32_t w : workers) {
    FieldHandle field;
    const auto start = std::chrono::steady_clock::now();
    const mlcc_status status = mlcc_field_compute(
        rescaled.ptr, resolution.data(), lower.data(), upper.data(), o.k, w, &field.ptr);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (status != MLCC_OK) return report_failure(status);

    bool identical = mlcc_field_size(field.ptr) == mlcc_field_size(baseline.ptr) &&
                     mlcc_field_denominator(field.ptr) == mlcc_field_denominator(baseline.ptr);
    for (int64_t i = 0; identical && i < mlcc_field_size(field.ptr); ++i) {
      int32_t a = 0, b = 0;
      if (mlcc_field_count_at(field.ptr, i, &a) != MLCC_OK ||
          mlcc_field_count_at(baseline.ptr, i, &b) != MLCC_OK || a != b)
        identical = false;
    }
    std::cout << w << "," << fmt(ms) << "," << (identical ? 1 : 0) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-level conformal clustering"};
  app.set_version_flag("--version", std::string(mlcc_version()));
  app.require_subcommand(1);

  PipelineOptions cluster_opts, field_opts, tree_opts, hc_opts, eval_opts, bench_opts;

  CLI::App* cluster = app.add_subcommand(
      "cluster", "full pipeline: p-value field, cluster tree, plots");
  add_pipeline_options(cluster, cluster_opts, false);

  CLI::App* field_cmd =
      app.add_subcommand("field", "evaluate and save the p-value field only");
  add_pipeline_options(field_cmd, field_opts, false);

  CLI::App* tree_cmd =
      app.add_subcommand("tree", "rebuild tree artifacts from a saved field");
  add_pipeline_options(tree_cmd, tree_opts, true);

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic mixture CSV");
  uint64_t seed = 1;
  double noise = 0.1;
  int32_t size = 100;
  double inflation = 5.0;
  std::string synth_output = "synth.csv";
  synth->add_option("--seed", seed, "generator seed")->envname("MLCC_SEED");
  synth->add_option("--noise", noise, "noise fraction per component in (0,1)")
      ->envname("MLCC_NOISE");
  synth->add_option("--size", size, "examples per component")->envname("MLCC_SIZE");
  synth->add_option("--inflation", inflation, "noise variance multiplier")
      ->envname("MLCC_INFLATION");
  synth->add_option("--output", synth_output, "output CSV path")->envname("MLCC_OUTPUT");

  CLI::App* hc = app.add_subcommand("hc", "single-linkage baseline and purity");
  add_pipeline_options(hc, hc_opts, false);
  int32_t hc_cut = 0;
  std::string hc_merges, hc_cut_path;
  hc->add_option("--cut", hc_cut, "also produce the k-cluster cut");
  hc->add_option("--merges", hc_merges, "write the merge list CSV here");
  hc->add_option("--cut-output", hc_cut_path, "write the cut labels CSV here");

  CLI::App* eval = app.add_subcommand("eval", "metrics from a dataset and field");
  add_pipeline_options(eval, eval_opts, false);
  eval->add_option("--field", eval_opts.field_path, "saved p-value field CSV")
      ->envname("MLCC_FIELD");
  bool eval_auc = false, eval_purity = false;
  eval->add_flag("--auc", eval_auc, "anomaly AUC from the dataset's noise flags");
  eval->add_flag("--purity", eval_purity, "averaged purity of the cluster tree");

  CLI::App* bench =
      app.add_subcommand("bench", "time the field evaluation across worker counts");
  add_pipeline_options(bench, bench_opts, false);
  std::string workers_list;
  bench->add_option("--workers-list", workers_list, "comma list, 0 = all threads")
      ->envname("MLCC_WORKERS_LIST");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(MLCC_ERROR_VALIDATION);
  }

  try {
    if (app.got_subcommand(cluster)) return run_pipeline_command("cluster", cluster_opts);
    if (app.got_subcommand(field_cmd)) return run_pipeline_command("field", field_opts);
    if (app.got_subcommand(tree_cmd)) return run_pipeline_command("tree", tree_opts);
    if (app.got_subcommand(synth)) return run_synth(seed, noise, size, inflation, synth_output);
    if (app.got_subcommand(hc)) return run_hc(hc_opts, hc_cut, hc_merges, hc_cut_path);
    if (app.got_subcommand(eval)) return run_eval(eval_opts, eval_auc, eval_purity);
    if (app.got_subcommand(bench)) return run_bench(bench_opts, workers_list);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(MLCC_ERROR_VALIDATION);
  }
  return 0;
}
