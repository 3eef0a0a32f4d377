// End-to-end runs of the artifact pipeline against a temp directory:
// emitted files, manifest contents, determinism, and the tree-mode replay.
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlcc/csv.hpp"
#include "mlcc/errors.hpp"
#include "mlcc/pipeline.hpp"
#include "mlcc/rng.hpp"
#include "mlcc/synth.hpp"
#include "mlcc/version.hpp"

#include <unistd.h>

using mlcc::RunConfig;
using mlcc::RunSummary;
using mlcc::errc;

namespace {

namespace fs = std::filesystem;

const fs::path& scratch_root() {
  static const fs::path root = [] {
    fs::path p = fs::temp_directory_path() /
                 ("mlcc_pipeline_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return root;
}

std::string fresh_dir(const std::string& name) {
  const fs::path p = scratch_root() / name;
  fs::remove_all(p);
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char ch : text)
    if (ch == '\n') ++n;
  return n;
}

// 100 examples, 2-d, with component labels and noise flags.
const std::string& mixture_csv() {
  static const std::string path = [] {
    const mlcc::SynthSample sample = mlcc::generate({1, 0.2, 20, 5.0});
    const std::string p = (scratch_root() / "mixture.csv").string();
    mlcc::write_dataset_csv(p, mlcc::to_dataset(sample));
    return p;
  }();
  return path;
}

RunConfig small_cluster_config(const std::string& outdir) {
  RunConfig config;
  config.mode = "cluster";
  config.input = mixture_csv();
  config.resolution = {12, 12};
  config.workers = 1;
  config.outdir = outdir;
  config.svg_eps = {0.05, 0.25};
  return config;
}

}  // namespace

TEST_CASE("cluster mode writes every documented artifact") {
  const std::string outdir = fresh_dir("run_full");
  const RunSummary summary = mlcc::run_pipeline(small_cluster_config(outdir));

  CHECK(summary.examples == 100);
  CHECK(summary.dim == 2);
  CHECK(summary.nodes == 144);
  CHECK(summary.levels == 100);  // default ladder keeps all l attainable levels
  CHECK(summary.splits >= 1);
  CHECK(summary.max_clusters >= 2);

  const std::vector<std::string> expected = {
      "field.csv",     "tree.txt",       "cluster_counts.csv", "region_0.05.svg",
      "region_0.25.svg", "dendrogram.svg", "manifest.json"};
  REQUIRE(summary.outputs.size() == expected.size());
  for (size_t i = 0; i < expected.size(); ++i) {
    CHECK(summary.outputs[i] == (fs::path(outdir) / expected[i]).string());
    CHECK(fs::exists(summary.outputs[i]));
  }

  const std::string field = slurp(summary.outputs[0]);
  CHECK(count_lines(field) == 145);  // header + one row per node
  const std::string counts = slurp(summary.outputs[2]);
  CHECK(count_lines(counts) == 101);  // header + one row per level
  CHECK(counts.substr(0, 13) == "eps,clusters\n");

  const std::string tree = slurp(summary.outputs[1]);
  CHECK(tree.rfind("mlcc-tree v1\n", 0) == 0);
  const size_t leaf_pos = tree.find("\nleaf-order ");
  REQUIRE(leaf_pos != std::string::npos);
  const size_t leaf_end = tree.find('\n', leaf_pos + 1);
  std::istringstream leaf_line(tree.substr(leaf_pos + 1, leaf_end - leaf_pos - 1));
  std::string word;
  int leaves = -1;  // skip the "leaf-order" token itself
  while (leaf_line >> word) ++leaves;
  CHECK(leaves == 100);  // every example appears in the dendrogram order

  for (size_t i = 3; i <= 5; ++i)
    CHECK(slurp(summary.outputs[i]).rfind("<svg ", 0) == 0);
}

TEST_CASE("manifest records the run and echoes the configuration") {
  const std::string outdir = fresh_dir("run_manifest");
  const RunSummary summary = mlcc::run_pipeline(small_cluster_config(outdir));

  const nlohmann::json manifest =
      nlohmann::json::parse(slurp((fs::path(outdir) / "manifest.json").string()));
  CHECK(manifest.at("version").get<std::string>() == mlcc::kVersion);
  CHECK(manifest.at("examples").get<int64_t>() == 100);
  CHECK(manifest.at("nodes").get<int64_t>() == 144);
  CHECK(manifest.at("levels").get<int>() == summary.levels);
  CHECK(manifest.at("splits").get<int>() == summary.splits);
  CHECK(manifest.at("config").at("resolution").get<std::vector<int>>() ==
        std::vector<int>{12, 12});
  CHECK(manifest.at("config").at("mode").get<std::string>() == "cluster");
  // The manifest lists everything written before it, i.e. itself excluded.
  CHECK(manifest.at("outputs").size() + 1 == summary.outputs.size());
  CHECK(manifest.at("total_ms").get<double>() >= 0.0);

  SUBCASE("the echoed config reruns the pipeline verbatim") {
    nlohmann::json echoed = manifest.at("config");
    const std::string replay_dir = fresh_dir("run_replay");
    echoed["outdir"] = replay_dir;
    mlcc::run_pipeline(mlcc::config_from_json(echoed.dump()));
    for (const char* name : {"field.csv", "tree.txt", "cluster_counts.csv"})
      CHECK(slurp((fs::path(replay_dir) / name).string()) ==
            slurp((fs::path(outdir) / name).string()));
  }
}

TEST_CASE("repeated runs are byte-identical") {
  const std::string dir_a = fresh_dir("run_det_a");
  const std::string dir_b = fresh_dir("run_det_b");
  RunConfig config = small_cluster_config(dir_a);
  config.workers = 0;  // all threads; determinism must not depend on the count
  mlcc::run_pipeline(config);
  config.outdir = dir_b;
  config.workers = 3;
  mlcc::run_pipeline(config);
  for (const char* name : {"field.csv", "tree.txt", "cluster_counts.csv"})
    CHECK(slurp((fs::path(dir_a) / name).string()) ==
          slurp((fs::path(dir_b) / name).string()));
}

TEST_CASE("tree mode rebuilds identical artifacts from the saved field") {
  const std::string full_dir = fresh_dir("run_tree_src");
  mlcc::run_pipeline(small_cluster_config(full_dir));

  RunConfig replay;
  replay.mode = "tree";
  replay.input = mixture_csv();
  replay.field_path = (fs::path(full_dir) / "field.csv").string();
  replay.outdir = fresh_dir("run_tree_dst");
  replay.svg = false;
  const RunSummary summary = mlcc::run_pipeline(replay);

  CHECK(summary.nodes == 144);
  CHECK(summary.field_ms == 0.0);  // nothing recomputed
  REQUIRE(summary.outputs.size() == 3);  // tree, counts, manifest
  CHECK(!fs::exists(fs::path(replay.outdir) / "field.csv"));
  CHECK(!fs::exists(fs::path(replay.outdir) / "dendrogram.svg"));
  for (const char* name : {"tree.txt", "cluster_counts.csv"})
    CHECK(slurp((fs::path(replay.outdir) / name).string()) ==
          slurp((fs::path(full_dir) / name).string()));
}

TEST_CASE("field mode emits the field and any requested region plots only") {
  const std::string outdir = fresh_dir("run_field");
  RunConfig config;
  config.mode = "field";
  config.input = mixture_csv();
  config.resolution = {10, 10};
  config.workers = 1;
  config.outdir = outdir;
  config.svg_eps = {0.1};
  const RunSummary summary = mlcc::run_pipeline(config);

  CHECK(summary.levels == 0);
  REQUIRE(summary.outputs.size() == 3);
  CHECK(fs::exists(fs::path(outdir) / "field.csv"));
  CHECK(fs::exists(fs::path(outdir) / "region_0.1.svg"));
  CHECK(fs::exists(fs::path(outdir) / "manifest.json"));
  CHECK(!fs::exists(fs::path(outdir) / "tree.txt"));
  CHECK(!fs::exists(fs::path(outdir) / "dendrogram.svg"));
}

TEST_CASE("a 3-d dataset defaults to the 20x20x20 grid") {
  const std::string input = (fs::path(scratch_root()) / "cube.csv").string();
  {
    mlcc::Rng rng(7);
    std::string csv = "x1,x2,x3\n";
    for (int i = 0; i < 30; ++i) {
      csv += mlcc::format_double(rng.uniform() * 20.0);
      csv += ',';
      csv += mlcc::format_double(rng.uniform() * 20.0);
      csv += ',';
      csv += mlcc::format_double(rng.uniform() * 20.0);
      csv += '\n';
    }
    std::ofstream out(input, std::ios::binary);
    out << csv;
  }

  RunConfig config;
  config.mode = "field";
  config.input = input;
  config.workers = 0;
  config.outdir = fresh_dir("run_cube");
  const RunSummary summary = mlcc::run_pipeline(config);
  CHECK(summary.dim == 3);
  CHECK(summary.nodes == 8000);
  CHECK(count_lines(slurp((fs::path(config.outdir) / "field.csv").string())) == 8001);
}

TEST_CASE("the node budget is enforced before any field work") {
  RunConfig config = small_cluster_config(fresh_dir("run_budget"));
  config.resolution = {300, 300};
  config.node_budget = 10000;
  try {
    mlcc::run_pipeline(config);
    FAIL("oversized lattice accepted");
  } catch (const mlcc::Error& e) {
    CHECK(e.code() == errc::budget_exceeded);
    CHECK(std::string(e.what()).find("10000") != std::string::npos);
  }
  CHECK(!fs::exists(fs::path(config.outdir) / "field.csv"));

  config.node_budget = 0;
  try {
    mlcc::run_pipeline(config);
    FAIL("budget 0 accepted");
  } catch (const mlcc::Error& e) {
    CHECK(e.code() == errc::invalid_argument);
  }
}

TEST_CASE("invalid configurations are rejected up front") {
  auto code_of = [](const RunConfig& config) {
    try {
      mlcc::run_pipeline(config);
      FAIL("configuration accepted");
    } catch (const mlcc::Error& e) {
      return e.code();
    }
    return errc::io;  // unreachable
  };

  RunConfig config = small_cluster_config(fresh_dir("run_invalid"));
  config.mode = "dance";
  CHECK(code_of(config) == errc::invalid_argument);

  config = small_cluster_config(fresh_dir("run_invalid"));
  config.input.clear();
  CHECK(code_of(config) == errc::invalid_argument);

  config = small_cluster_config(fresh_dir("run_invalid"));
  config.mode = "tree";
  config.field_path.clear();
  CHECK(code_of(config) == errc::invalid_argument);

  config = small_cluster_config(fresh_dir("run_invalid"));
  config.resolution = {5};
  CHECK(code_of(config) == errc::shape_mismatch);

  config = small_cluster_config(fresh_dir("run_invalid"));
  config.resolution = {0, 5};
  CHECK(code_of(config) == errc::invalid_argument);

  config = small_cluster_config(fresh_dir("run_invalid"));
  config.input = (fs::path(scratch_root()) / "no_such_file.csv").string();
  CHECK(code_of(config) == errc::io);
}

TEST_CASE("tree mode cross-checks the saved field against the dataset") {
  const std::string full_dir = fresh_dir("run_check_src");
  mlcc::run_pipeline(small_cluster_config(full_dir));

  // A dataset with a different example count cannot share the field.
  const std::string short_csv = (fs::path(scratch_root()) / "short.csv").string();
  {
    const mlcc::SynthSample sample = mlcc::generate({2, 0.2, 10, 5.0});
    mlcc::write_dataset_csv(short_csv, mlcc::to_dataset(sample));
  }
  RunConfig replay;
  replay.mode = "tree";
  replay.input = short_csv;
  replay.field_path = (fs::path(full_dir) / "field.csv").string();
  replay.outdir = fresh_dir("run_check_dst");
  try {
    mlcc::run_pipeline(replay);
    FAIL("mismatched field accepted");
  } catch (const mlcc::Error& e) {
    CHECK(e.code() == errc::shape_mismatch);
  }
}

TEST_CASE("run configs cross the JSON bridge faithfully") {
  const std::string text = R"({
    "mode": "tree", "input": "a.csv", "field_path": "f.csv",
    "label_column": "y", "binarize_label": true, "scale": 30.0,
    "resolution": [9, 9], "k": 3, "ladder": [0.1, 0.4], "stride": 2,
    "adjacency": "von_neumann", "workers": 4, "outdir": "out",
    "svg_eps": [0.1], "svg": false, "node_budget": 777
  })";
  const RunConfig config = mlcc::config_from_json(text);
  CHECK(config.mode == "tree");
  CHECK(config.input == "a.csv");
  CHECK(config.field_path == "f.csv");
  CHECK(config.label_column == "y");
  CHECK(config.binarize_label);
  CHECK(config.scale == 30.0);
  CHECK(config.resolution == std::vector<int32_t>{9, 9});
  CHECK(config.k == 3);
  CHECK(config.ladder == std::vector<double>{0.1, 0.4});
  CHECK(config.stride == 2);
  CHECK(config.adjacency == mlcc::Adjacency::von_neumann);
  CHECK(config.workers == 4);
  CHECK(config.outdir == "out");
  CHECK(config.svg == false);
  CHECK(config.node_budget == 777);

  // Both spellings of the four-neighbor adjacency are accepted.
  CHECK(mlcc::config_from_json(R"({"adjacency": "vonneumann"})").adjacency ==
        mlcc::Adjacency::von_neumann);
  // Omitted keys keep their defaults.
  const RunConfig defaults = mlcc::config_from_json("{}");
  CHECK(defaults.mode == "cluster");
  CHECK(defaults.k == 5);
  CHECK(defaults.svg);

  try {
    mlcc::config_from_json("{nope");
    FAIL("malformed JSON accepted");
  } catch (const mlcc::Error& e) {
    CHECK(e.code() == errc::parse);
  }
  try {
    mlcc::config_from_json(R"({"resolution": "12x12"})");
    FAIL("mistyped field accepted");
  } catch (const mlcc::Error& e) {
    CHECK(e.code() == errc::parse);
  }
  try {
    mlcc::config_from_json(R"({"adjacency": "hex"})");
    FAIL("unknown adjacency accepted");
  } catch (const mlcc::Error& e) {
    CHECK(e.code() == errc::invalid_argument);
  }
}
