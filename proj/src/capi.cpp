#include "mlcc/mlcc.h"

#include <cstring>
#include <exception>
#include <string>

#include "mlcc/conformal.hpp"
#include "mlcc/csv.hpp"
#include "mlcc/errors.hpp"
#include "mlcc/evaluate.hpp"
#include "mlcc/hc.hpp"
#include "mlcc/model.hpp"
#include "mlcc/multilevel.hpp"
#include "mlcc/pipeline.hpp"
#include "mlcc/preprocess.hpp"
#include "mlcc/synth.hpp"
#include "mlcc/version.hpp"

struct mlcc_dataset {
  mlcc::Dataset value;
};
struct mlcc_field {
  mlcc::PValueField value;
};
struct mlcc_tree {
  mlcc::ClusterTree value;
};
struct mlcc_hc {
  mlcc::HcTree value;
};

namespace {

thread_local std::string t_last_error;

mlcc_status status_of(mlcc::errc code) {
  switch (code) {
    case mlcc::errc::invalid_argument:
    case mlcc::errc::shape_mismatch:
    case mlcc::errc::out_of_range:
    case mlcc::errc::insufficient_data:
    case mlcc::errc::empty_input:
    case mlcc::errc::undefined_metric:
      return MLCC_ERROR_VALIDATION;
    case mlcc::errc::parse:
      return MLCC_ERROR_PARSE;
    case mlcc::errc::io:
      return MLCC_ERROR_IO;
    case mlcc::errc::budget_exceeded:
      return MLCC_ERROR_BUDGET;
  }
  return MLCC_ERROR;
}

// Runs the body with the C++ -> C error contract: exceptions become status
// codes plus a thread-local message, success clears the message.
template <typename Fn>
mlcc_status guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return MLCC_OK;
  } catch (const mlcc::Error& e) {
    t_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return MLCC_ERROR;
  } catch (...) {
    t_last_error = "unknown failure";
    return MLCC_ERROR;
  }
}

mlcc_status invalid(const char* what) {
  t_last_error = what;
  return MLCC_ERROR_VALIDATION;
}

}  // namespace

extern "C" {

const char* mlcc_version(void) { return mlcc::kVersion; }

const char* mlcc_last_error(void) { return t_last_error.c_str(); }

mlcc_status mlcc_dataset_create(const double* points, int64_t n, int64_t dim,
                                mlcc_dataset** out) {
  if (!points || !out) return invalid("points and out must not be NULL");
  return guarded([&] {
    if (n < 0 || dim < 1) mlcc::fail(mlcc::errc::invalid_argument, "need n >= 0, dim >= 1");
    std::vector<double> buffer(points, points + n * dim);
    *out = new mlcc_dataset{mlcc::Dataset(std::move(buffer), dim)};
  });
}

mlcc_status mlcc_dataset_from_csv(const char* path, const char* label_column,
                                  int binarize_label, mlcc_dataset** out) {
  if (!path || !out) return invalid("path and out must not be NULL");
  return guarded([&] {
    mlcc::IngestOptions options;
    if (label_column) options.label_column = label_column;
    options.binarize_label = binarize_label != 0;
    *out = new mlcc_dataset{mlcc::ingest_csv(path, options)};
  });
}

mlcc_status mlcc_dataset_save_csv(const mlcc_dataset* dataset, const char* path) {
  if (!dataset || !path) return invalid("dataset and path must not be NULL");
  return guarded([&] { mlcc::write_dataset_csv(path, dataset->value); });
}

mlcc_status mlcc_synth(uint64_t seed, double noise_fraction, int32_t component_size,
                       double inflation, mlcc_dataset** out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] {
    const mlcc::SynthSample sample =
        mlcc::generate({seed, noise_fraction, component_size, inflation});
    *out = new mlcc_dataset{mlcc::to_dataset(sample)};
  });
}

mlcc_status mlcc_rescale(const mlcc_dataset* dataset, double scale, mlcc_dataset** out) {
  if (!dataset || !out) return invalid("dataset and out must not be NULL");
  return guarded([&] {
    const double s =
        scale > 0.0 ? scale : mlcc::default_scale(static_cast<int>(dataset->value.dim()));
    const mlcc::RescaleParams params = mlcc::fit_rescale(dataset->value, s);
    *out = new mlcc_dataset{mlcc::apply_rescale(params, dataset->value)};
  });
}

double mlcc_default_scale(int32_t dim) {
  if (dim < 1) return 0.0;
  try {
    return mlcc::default_scale(dim);
  } catch (...) {
    return 0.0;
  }
}

int64_t mlcc_dataset_size(const mlcc_dataset* dataset) {
  return dataset ? dataset->value.size() : 0;
}

int64_t mlcc_dataset_dim(const mlcc_dataset* dataset) {
  return dataset ? dataset->value.dim() : 0;
}

mlcc_status mlcc_dataset_point(const mlcc_dataset* dataset, int64_t i, double* out) {
  if (!dataset || !out) return invalid("dataset and out must not be NULL");
  return guarded([&] {
    if (i < 0 || i >= dataset->value.size())
      mlcc::fail(mlcc::errc::out_of_range, "point index out of range");
    const auto p = dataset->value.point(i);
    std::memcpy(out, p.data(), p.size() * sizeof(double));
  });
}

void mlcc_dataset_free(mlcc_dataset* dataset) { delete dataset; }

mlcc_status mlcc_field_compute(const mlcc_dataset* dataset, const int32_t* resolution,
                               const double* lower, const double* upper, int32_t k,
                               int32_t workers, mlcc_field** out) {
  if (!dataset || !resolution || !lower || !upper || !out)
    return invalid("dataset, lattice arrays and out must not be NULL");
  return guarded([&] {
    const auto d = static_cast<int>(dataset->value.dim());
    mlcc::Lattice lattice(std::vector<int32_t>(resolution, resolution + d),
                          std::vector<double>(lower, lower + d),
                          std::vector<double>(upper, upper + d));
    *out = new mlcc_field{
        mlcc::field(dataset->value, lattice, mlcc::NcmConfig{k}, workers)};
  });
}

mlcc_status mlcc_field_save_csv(const mlcc_field* field, const char* path) {
  if (!field || !path) return invalid("field and path must not be NULL");
  return guarded([&] { mlcc::write_field_csv(path, field->value); });
}

mlcc_status mlcc_field_load_csv(const char* path, mlcc_field** out) {
  if (!path || !out) return invalid("path and out must not be NULL");
  return guarded([&] { *out = new mlcc_field{mlcc::read_field_csv(path)}; });
}

int64_t mlcc_field_size(const mlcc_field* field) { return field ? field->value.size() : 0; }

int32_t mlcc_field_denominator(const mlcc_field* field) {
  return field ? field->value.denominator() : 0;
}

mlcc_status mlcc_field_count_at(const mlcc_field* field, int64_t node, int32_t* out) {
  if (!field || !out) return invalid("field and out must not be NULL");
  return guarded([&] {
    if (node < 0 || node >= field->value.size())
      mlcc::fail(mlcc::errc::out_of_range, "node index out of range");
    *out = field->value.count(node);
  });
}

void mlcc_field_free(mlcc_field* field) { delete field; }

mlcc_status mlcc_tree_build(const mlcc_field* field, const double* ladder,
                            int32_t ladder_len, int32_t stride, int moore_adjacency,
                            mlcc_tree** out) {
  if (!field || !out) return invalid("field and out must not be NULL");
  if (!ladder && ladder_len > 0) return invalid("ladder is NULL but ladder_len > 0");
  return guarded([&] {
    const mlcc::EpsilonLadder levels =
        ladder && ladder_len > 0
            ? mlcc::EpsilonLadder(std::vector<double>(ladder, ladder + ladder_len))
            : mlcc::default_ladder(field->value.denominator() - 1, stride);
    const auto adjacency =
        moore_adjacency ? mlcc::Adjacency::moore : mlcc::Adjacency::von_neumann;
    *out = new mlcc_tree{mlcc::build_tree(field->value, levels, adjacency)};
  });
}

int32_t mlcc_tree_num_levels(const mlcc_tree* tree) {
  return tree ? static_cast<int32_t>(tree->value.levels.size()) : 0;
}

mlcc_status mlcc_tree_cluster_count(const mlcc_tree* tree, int32_t level, int32_t* out) {
  if (!tree || !out) return invalid("tree and out must not be NULL");
  return guarded([&] {
    if (level < 0 || level >= static_cast<int32_t>(tree->value.levels.size()))
      mlcc::fail(mlcc::errc::out_of_range, "level out of range");
    *out = static_cast<int32_t>(tree->value.levels[level].clusters.size());
  });
}

mlcc_status mlcc_tree_purity(const mlcc_tree* tree, const mlcc_dataset* dataset,
                             double* average, int32_t* clusters, int* warning) {
  if (!tree || !dataset || !average) return invalid("tree, dataset and average required");
  return guarded([&] {
    if (!dataset->value.has_labels())
      mlcc::fail(mlcc::errc::invalid_argument, "dataset carries no labels");
    const auto trajs = mlcc::trajectories(dataset->value, tree->value);
    const mlcc::PurityReport report =
        mlcc::averaged_purity_mlcc(tree->value, trajs, dataset->value.labels());
    *average = report.average;
    if (clusters) *clusters = static_cast<int32_t>(report.cluster_purity.size());
    if (warning) *warning = report.warning ? 1 : 0;
  });
}

void mlcc_tree_free(mlcc_tree* tree) { delete tree; }

mlcc_status mlcc_anomaly_auc(const mlcc_field* field, const mlcc_dataset* dataset,
                             double* auc, int64_t* positives, int64_t* negatives) {
  if (!field || !dataset || !auc) return invalid("field, dataset and auc required");
  return guarded([&] {
    if (!dataset->value.has_noise_flags())
      mlcc::fail(mlcc::errc::invalid_argument, "dataset carries no noise flags");
    const auto p = mlcc::example_p_values(dataset->value, field->value);
    const mlcc::AucReport report = mlcc::anomaly_auc(p, dataset->value.noise_flags());
    *auc = report.auc;
    if (positives) *positives = report.positives;
    if (negatives) *negatives = report.negatives;
  });
}

mlcc_status mlcc_hc_build(const mlcc_dataset* dataset, mlcc_hc** out) {
  if (!dataset || !out) return invalid("dataset and out must not be NULL");
  return guarded([&] { *out = new mlcc_hc{mlcc::single_linkage(dataset->value)}; });
}

int64_t mlcc_hc_num_merges(const mlcc_hc* hc) {
  return hc ? static_cast<int64_t>(hc->value.merges.size()) : 0;
}

mlcc_status mlcc_hc_merge_at(const mlcc_hc* hc, int64_t i, int32_t* a, int32_t* b,
                             double* distance) {
  if (!hc || !a || !b || !distance) return invalid("hc and all outputs required");
  return guarded([&] {
    if (i < 0 || i >= static_cast<int64_t>(hc->value.merges.size()))
      mlcc::fail(mlcc::errc::out_of_range, "merge index out of range");
    *a = hc->value.merges[i].a;
    *b = hc->value.merges[i].b;
    *distance = hc->value.merges[i].distance;
  });
}

mlcc_status mlcc_hc_cut(const mlcc_hc* hc, int32_t k, int32_t* labels_out) {
  if (!hc || !labels_out) return invalid("hc and labels_out must not be NULL");
  return guarded([&] {
    const auto labels = mlcc::cut(hc->value, k);
    std::memcpy(labels_out, labels.data(), labels.size() * sizeof(int32_t));
  });
}

mlcc_status mlcc_hc_purity(const mlcc_hc* hc, const mlcc_dataset* dataset, double* average,
                           int32_t* clusters, int* warning) {
  if (!hc || !dataset || !average) return invalid("hc, dataset and average required");
  return guarded([&] {
    if (!dataset->value.has_labels())
      mlcc::fail(mlcc::errc::invalid_argument, "dataset carries no labels");
    const mlcc::PurityReport report =
        mlcc::averaged_purity_hc(hc->value, dataset->value.labels());
    *average = report.average;
    if (clusters) *clusters = static_cast<int32_t>(report.cluster_purity.size());
    if (warning) *warning = report.warning ? 1 : 0;
  });
}

void mlcc_hc_free(mlcc_hc* hc) { delete hc; }

mlcc_status mlcc_pipeline_run(const char* config_json, char** summary_json) {
  if (!config_json) return invalid("config_json must not be NULL");
  return guarded([&] {
    const mlcc::RunConfig config = mlcc::config_from_json(config_json);
    const mlcc::RunSummary summary = mlcc::run_pipeline(config);
    if (summary_json) {
      const std::string text = mlcc::summary_to_json(summary);
      char* buffer = new char[text.size() + 1];
      std::memcpy(buffer, text.c_str(), text.size() + 1);
      *summary_json = buffer;
    }
  });
}

void mlcc_string_free(char* s) { delete[] s; }

}  // extern "C"
