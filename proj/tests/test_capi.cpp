// Exercises the C interface of the shared library: handle lifecycles, status
// codes, the thread-local error text, and the JSON pipeline entry point.
// Only mlcc.h is included; everything happens across the C boundary.
#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "mlcc/mlcc.h"

#include <unistd.h>

namespace {

namespace fs = std::filesystem;

const fs::path& scratch_root() {
  static const fs::path root = [] {
    fs::path p =
        fs::temp_directory_path() / ("mlcc_capi_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return root;
}

std::string path_of(const char* name) { return (scratch_root() / name).string(); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  REQUIRE(out.good());
}

// Synth sample with labels and noise flags, rescaled onto [0,50]^2, plus its
// p-value field on an 8x8 grid. Shared by the tree/auc/hc cases.
struct Fixture {
  mlcc_dataset* raw = nullptr;
  mlcc_dataset* scaled = nullptr;
  mlcc_field* field = nullptr;

  Fixture() {
    REQUIRE(mlcc_synth(3, 0.2, 10, 5.0, &raw) == MLCC_OK);
    REQUIRE(mlcc_rescale(raw, 50.0, &scaled) == MLCC_OK);
    const int32_t resolution[2] = {8, 8};
    const double lower[2] = {0.0, 0.0};
    const double upper[2] = {50.0, 50.0};
    REQUIRE(mlcc_field_compute(scaled, resolution, lower, upper, 5, 1, &field) ==
            MLCC_OK);
  }
  ~Fixture() {
    mlcc_field_free(field);
    mlcc_dataset_free(scaled);
    mlcc_dataset_free(raw);
  }
};

}  // namespace

TEST_CASE("version string and error text lifecycle") {
  REQUIRE(mlcc_version() != nullptr);
  CHECK(std::string(mlcc_version()) == "0.1.0");

  // A failing call leaves a message; the next success clears it.
  CHECK(mlcc_dataset_create(nullptr, 0, 0, nullptr) == MLCC_ERROR_VALIDATION);
  CHECK(!std::string(mlcc_last_error()).empty());

  const double points[4] = {0.0, 0.0, 1.0, 2.0};
  mlcc_dataset* dataset = nullptr;
  REQUIRE(mlcc_dataset_create(points, 2, 2, &dataset) == MLCC_OK);
  CHECK(std::string(mlcc_last_error()).empty());

  CHECK(mlcc_dataset_size(dataset) == 2);
  CHECK(mlcc_dataset_dim(dataset) == 2);
  double p[2] = {0.0, 0.0};
  REQUIRE(mlcc_dataset_point(dataset, 1, p) == MLCC_OK);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 2.0);
  CHECK(mlcc_dataset_point(dataset, 2, p) == MLCC_ERROR_VALIDATION);
  CHECK(mlcc_dataset_point(dataset, -1, p) == MLCC_ERROR_VALIDATION);
  mlcc_dataset_free(dataset);
  mlcc_dataset_free(nullptr);  // tolerated
}

TEST_CASE("synthetic generation and CSV round trip") {
  mlcc_dataset* dataset = nullptr;
  REQUIRE(mlcc_synth(1, 0.2, 100, 5.0, &dataset) == MLCC_OK);
  CHECK(mlcc_dataset_size(dataset) == 500);
  CHECK(mlcc_dataset_dim(dataset) == 2);

  const std::string csv = path_of("synth.csv");
  REQUIRE(mlcc_dataset_save_csv(dataset, csv.c_str()) == MLCC_OK);

  mlcc_dataset* loaded = nullptr;
  REQUIRE(mlcc_dataset_from_csv(csv.c_str(), "component", 0, &loaded) == MLCC_OK);
  CHECK(mlcc_dataset_size(loaded) == 500);
  CHECK(mlcc_dataset_dim(loaded) == 2);
  for (int64_t i : {int64_t{0}, int64_t{123}, int64_t{499}}) {
    double a[2], b[2];
    REQUIRE(mlcc_dataset_point(dataset, i, a) == MLCC_OK);
    REQUIRE(mlcc_dataset_point(loaded, i, b) == MLCC_OK);
    CHECK(a[0] == b[0]);
    CHECK(a[1] == b[1]);
  }
  mlcc_dataset_free(loaded);
  mlcc_dataset_free(dataset);

  CHECK(mlcc_synth(9, 2.0, 100, 5.0, &dataset) == MLCC_ERROR_VALIDATION);
  CHECK(mlcc_dataset_from_csv(path_of("missing.csv").c_str(), nullptr, 0, &loaded) ==
        MLCC_ERROR_IO);
  write_text(path_of("broken.csv"), "x1,x2\n1,zebra\n");
  CHECK(mlcc_dataset_from_csv(path_of("broken.csv").c_str(), nullptr, 0, &loaded) ==
        MLCC_ERROR_PARSE);
  CHECK(!std::string(mlcc_last_error()).empty());
}

TEST_CASE("default scales and rescaling") {
  CHECK(mlcc_default_scale(1) == 100.0);
  CHECK(mlcc_default_scale(2) == 50.0);
  CHECK(mlcc_default_scale(3) == 20.0);
  CHECK(mlcc_default_scale(0) == 0.0);

  mlcc_dataset* dataset = nullptr;
  REQUIRE(mlcc_synth(4, 0.1, 50, 5.0, &dataset) == MLCC_OK);
  mlcc_dataset* scaled = nullptr;
  REQUIRE(mlcc_rescale(dataset, 0.0, &scaled) == MLCC_OK);  // 0 picks the default
  const int64_t n = mlcc_dataset_size(scaled);
  CHECK(n == 250);
  for (int64_t i = 0; i < n; ++i) {
    double p[2];
    REQUIRE(mlcc_dataset_point(scaled, i, p) == MLCC_OK);
    CHECK(p[0] >= 0.0);
    CHECK(p[0] <= 50.0);
    CHECK(p[1] >= 0.0);
    CHECK(p[1] <= 50.0);
  }
  mlcc_dataset_free(scaled);
  mlcc_dataset_free(dataset);
}

TEST_CASE("field evaluation, worker independence, save and load") {
  Fixture fx;
  CHECK(mlcc_field_size(fx.field) == 64);
  CHECK(mlcc_field_denominator(fx.field) == 51);  // 50 examples + 1

  mlcc_field* wide = nullptr;
  const int32_t resolution[2] = {8, 8};
  const double lower[2] = {0.0, 0.0};
  const double upper[2] = {50.0, 50.0};
  REQUIRE(mlcc_field_compute(fx.scaled, resolution, lower, upper, 5, 4, &wide) ==
          MLCC_OK);
  for (int64_t i = 0; i < 64; ++i) {
    int32_t a = 0, b = 0;
    REQUIRE(mlcc_field_count_at(fx.field, i, &a) == MLCC_OK);
    REQUIRE(mlcc_field_count_at(wide, i, &b) == MLCC_OK);
    CHECK(a == b);
    CHECK(a >= 1);
    CHECK(a <= 51);
  }
  mlcc_field_free(wide);

  const std::string path = path_of("field.csv");
  REQUIRE(mlcc_field_save_csv(fx.field, path.c_str()) == MLCC_OK);
  mlcc_field* loaded = nullptr;
  REQUIRE(mlcc_field_load_csv(path.c_str(), &loaded) == MLCC_OK);
  CHECK(mlcc_field_size(loaded) == 64);
  CHECK(mlcc_field_denominator(loaded) == 51);
  for (int64_t i = 0; i < 64; ++i) {
    int32_t a = 0, b = 0;
    REQUIRE(mlcc_field_count_at(fx.field, i, &a) == MLCC_OK);
    REQUIRE(mlcc_field_count_at(loaded, i, &b) == MLCC_OK);
    CHECK(a == b);
  }
  mlcc_field_free(loaded);

  int32_t count = 0;
  CHECK(mlcc_field_count_at(fx.field, 64, &count) == MLCC_ERROR_VALIDATION);
  mlcc_field* bad = nullptr;
  CHECK(mlcc_field_compute(fx.scaled, resolution, lower, upper, 0, 1, &bad) ==
        MLCC_ERROR_VALIDATION);
  CHECK(mlcc_field_compute(nullptr, resolution, lower, upper, 5, 1, &bad) ==
        MLCC_ERROR_VALIDATION);
  CHECK(mlcc_field_load_csv(path_of("missing_field.csv").c_str(), &bad) ==
        MLCC_ERROR_IO);
}

TEST_CASE("cluster tree over the C boundary") {
  Fixture fx;

  mlcc_tree* tree = nullptr;
  REQUIRE(mlcc_tree_build(fx.field, nullptr, 0, 5, 1, &tree) == MLCC_OK);
  CHECK(mlcc_tree_num_levels(tree) == 10);  // 50 levels subsampled by 5
  int32_t clusters = 0;
  REQUIRE(mlcc_tree_cluster_count(tree, 0, &clusters) == MLCC_OK);
  CHECK(clusters >= 1);
  CHECK(mlcc_tree_cluster_count(tree, 10, &clusters) == MLCC_ERROR_VALIDATION);

  double average = 0.0;
  int32_t purity_clusters = 0;
  int warning = -1;
  REQUIRE(mlcc_tree_purity(tree, fx.scaled, &average, &purity_clusters, &warning) ==
          MLCC_OK);
  CHECK(average > 0.0);
  CHECK(average <= 1.0);
  CHECK(purity_clusters >= 1);
  CHECK((warning == 0 || warning == 1));
  mlcc_tree_free(tree);

  const double ladder[2] = {0.1, 0.5};
  REQUIRE(mlcc_tree_build(fx.field, ladder, 2, 1, 0, &tree) == MLCC_OK);
  CHECK(mlcc_tree_num_levels(tree) == 2);
  mlcc_tree_free(tree);

  const double bad_ladder[2] = {0.5, 0.1};  // not increasing
  CHECK(mlcc_tree_build(fx.field, bad_ladder, 2, 1, 1, &tree) ==
        MLCC_ERROR_VALIDATION);
  CHECK(mlcc_tree_build(fx.field, nullptr, 2, 1, 1, &tree) == MLCC_ERROR_VALIDATION);

  // Purity needs labels; a bare matrix has none.
  const double points[4] = {0.0, 0.0, 1.0, 1.0};
  mlcc_dataset* bare = nullptr;
  REQUIRE(mlcc_dataset_create(points, 2, 2, &bare) == MLCC_OK);
  mlcc_tree* small = nullptr;
  REQUIRE(mlcc_tree_build(fx.field, nullptr, 0, 5, 1, &small) == MLCC_OK);
  CHECK(mlcc_tree_purity(small, bare, &average, nullptr, nullptr) ==
        MLCC_ERROR_VALIDATION);
  mlcc_tree_free(small);
  mlcc_dataset_free(bare);
}

TEST_CASE("anomaly ranking over the C boundary") {
  Fixture fx;
  double auc = 0.0;
  int64_t positives = 0, negatives = 0;
  REQUIRE(mlcc_anomaly_auc(fx.field, fx.scaled, &auc, &positives, &negatives) ==
          MLCC_OK);
  CHECK(positives == 10);  // two noise points per component
  CHECK(negatives == 40);
  CHECK(auc >= 0.0);
  CHECK(auc <= 1.0);

  const double points[4] = {0.0, 0.0, 1.0, 1.0};
  mlcc_dataset* bare = nullptr;
  REQUIRE(mlcc_dataset_create(points, 2, 2, &bare) == MLCC_OK);
  CHECK(mlcc_anomaly_auc(fx.field, bare, &auc, nullptr, nullptr) ==
        MLCC_ERROR_VALIDATION);
  mlcc_dataset_free(bare);
}

TEST_CASE("single-linkage baseline over the C boundary") {
  Fixture fx;
  mlcc_hc* hc = nullptr;
  REQUIRE(mlcc_hc_build(fx.scaled, &hc) == MLCC_OK);
  REQUIRE(mlcc_hc_num_merges(hc) == 49);

  double previous = 0.0;
  for (int64_t i = 0; i < 49; ++i) {
    int32_t a = 0, b = 0;
    double distance = -1.0;
    REQUIRE(mlcc_hc_merge_at(hc, i, &a, &b, &distance) == MLCC_OK);
    CHECK(a < b);
    CHECK(distance >= previous);
    previous = distance;
  }
  int32_t a, b;
  double distance;
  CHECK(mlcc_hc_merge_at(hc, 49, &a, &b, &distance) == MLCC_ERROR_VALIDATION);

  std::vector<int32_t> labels(50, -1);
  REQUIRE(mlcc_hc_cut(hc, 5, labels.data()) == MLCC_OK);
  for (int32_t label : labels) {
    CHECK(label >= 0);
    CHECK(label < 5);
  }
  CHECK(mlcc_hc_cut(hc, 0, labels.data()) == MLCC_ERROR_VALIDATION);
  CHECK(mlcc_hc_cut(hc, 51, labels.data()) == MLCC_ERROR_VALIDATION);

  double average = 0.0;
  int32_t clusters = 0;
  int warning = -1;
  REQUIRE(mlcc_hc_purity(hc, fx.scaled, &average, &clusters, &warning) == MLCC_OK);
  CHECK(average > 0.0);
  CHECK(average <= 1.0);
  CHECK(clusters >= 1);
  mlcc_hc_free(hc);
}

TEST_CASE("pipeline entry point with a JSON config") {
  mlcc_dataset* dataset = nullptr;
  REQUIRE(mlcc_synth(5, 0.2, 10, 5.0, &dataset) == MLCC_OK);
  const std::string csv = path_of("pipeline_input.csv");
  REQUIRE(mlcc_dataset_save_csv(dataset, csv.c_str()) == MLCC_OK);
  mlcc_dataset_free(dataset);

  const std::string outdir = path_of("pipeline_out");
  const std::string config = std::string("{\"mode\": \"field\", \"input\": \"") + csv +
                             "\", \"resolution\": [6, 6], \"workers\": 1, " +
                             "\"outdir\": \"" + outdir + "\"}";
  char* summary = nullptr;
  REQUIRE(mlcc_pipeline_run(config.c_str(), &summary) == MLCC_OK);
  REQUIRE(summary != nullptr);
  CHECK(std::string(summary).find("\"nodes\": 36") != std::string::npos);
  mlcc_string_free(summary);
  CHECK(std::filesystem::exists(std::filesystem::path(outdir) / "field.csv"));
  CHECK(std::filesystem::exists(std::filesystem::path(outdir) / "manifest.json"));

  CHECK(mlcc_pipeline_run("{nope", &summary) == MLCC_ERROR_PARSE);
  CHECK(mlcc_pipeline_run("{\"mode\": \"dance\", \"input\": \"x.csv\"}", &summary) ==
        MLCC_ERROR_VALIDATION);
  const std::string missing = std::string("{\"mode\": \"field\", \"input\": \"") +
                              path_of("still_missing.csv") + "\"}";
  CHECK(mlcc_pipeline_run(missing.c_str(), &summary) == MLCC_ERROR_IO);
  const std::string over = std::string("{\"input\": \"") + csv +
                           "\", \"resolution\": [200, 200], \"node_budget\": 100, " +
                           "\"outdir\": \"" + outdir + "\"}";
  CHECK(mlcc_pipeline_run(over.c_str(), &summary) == MLCC_ERROR_BUDGET);
  CHECK(mlcc_pipeline_run(nullptr, &summary) == MLCC_ERROR_VALIDATION);
  mlcc_string_free(nullptr);  // tolerated
}
