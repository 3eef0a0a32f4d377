/* C interface of the multi-level conformal clustering library.
 *
 * All entry points return an mlcc_status (or a plain value where failure is
 * impossible); on failure the thread-local message from mlcc_last_error()
 * describes what went wrong. Objects are opaque handles released with their
 * _free function. Passing NULL where a handle or output pointer is required
 * yields MLCC_ERROR_VALIDATION.
 */
#ifndef MLCC_H
#define MLCC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mlcc_status {
  MLCC_OK = 0,
  MLCC_ERROR = 1,            /* unexpected failure */
  MLCC_ERROR_VALIDATION = 2, /* bad argument, shape or config */
  MLCC_ERROR_PARSE = 3,      /* malformed input file */
  MLCC_ERROR_BUDGET = 4,     /* lattice larger than the node budget */
  MLCC_ERROR_IO = 5          /* filesystem failure */
} mlcc_status;

typedef struct mlcc_dataset mlcc_dataset;
typedef struct mlcc_field mlcc_field;
typedef struct mlcc_tree mlcc_tree;
typedef struct mlcc_hc mlcc_hc;

const char* mlcc_version(void);

/* Message of the most recent failure on this thread; empty string if none. */
const char* mlcc_last_error(void);

/* ---- datasets ---------------------------------------------------------- */

/* Copies a flat row-major buffer of n points with dim features each. */
mlcc_status mlcc_dataset_create(const double* points, int64_t n, int64_t dim,
                                mlcc_dataset** out);

/* label_column may be NULL (no labels). binarize_label thresholds a numeric
 * label column at its mean. A column named is_noise becomes per-example
 * noise flags. */
mlcc_status mlcc_dataset_from_csv(const char* path, const char* label_column,
                                  int binarize_label, mlcc_dataset** out);

mlcc_status mlcc_dataset_save_csv(const mlcc_dataset* dataset, const char* path);

/* Five-component synthetic mixture with a noise share per component. */
mlcc_status mlcc_synth(uint64_t seed, double noise_fraction, int32_t component_size,
                       double inflation, mlcc_dataset** out);

/* Affine per-feature map onto [0, scale]; scale <= 0 picks the default for
 * the dimensionality. */
mlcc_status mlcc_rescale(const mlcc_dataset* dataset, double scale, mlcc_dataset** out);

/* Default rescale target (and per-axis grid size) for a dimensionality:
 * 50 for 2 features, 20 for 3, else round(100 / dim), at least 1.
 * Returns 0 for dim < 1. */
double mlcc_default_scale(int32_t dim);

int64_t mlcc_dataset_size(const mlcc_dataset* dataset);
int64_t mlcc_dataset_dim(const mlcc_dataset* dataset);
mlcc_status mlcc_dataset_point(const mlcc_dataset* dataset, int64_t i, double* out);
void mlcc_dataset_free(mlcc_dataset* dataset);

/* ---- conformal p-value fields ------------------------------------------ */

/* Evaluates the conformal p-value at every node of the lattice spanned by
 * resolution/lower/upper (dim entries each) against the dataset. k is the
 * neighbor count of the nonconformity measure; workers <= 0 uses all
 * hardware threads. Output is identical for every worker count. */
mlcc_status mlcc_field_compute(const mlcc_dataset* dataset, const int32_t* resolution,
                               const double* lower, const double* upper, int32_t k,
                               int32_t workers, mlcc_field** out);

mlcc_status mlcc_field_save_csv(const mlcc_field* field, const char* path);
mlcc_status mlcc_field_load_csv(const char* path, mlcc_field** out);

int64_t mlcc_field_size(const mlcc_field* field);
/* p-values are exact rationals count / denominator. */
int32_t mlcc_field_denominator(const mlcc_field* field);
mlcc_status mlcc_field_count_at(const mlcc_field* field, int64_t node, int32_t* out);
void mlcc_field_free(mlcc_field* field);

/* ---- multi-level cluster trees ----------------------------------------- */

/* ladder may be NULL (every attainable threshold, subsampled by stride).
 * moore_adjacency 0 restricts components to axis neighbors. */
mlcc_status mlcc_tree_build(const mlcc_field* field, const double* ladder,
                            int32_t ladder_len, int32_t stride, int moore_adjacency,
                            mlcc_tree** out);

int32_t mlcc_tree_num_levels(const mlcc_tree* tree);
mlcc_status mlcc_tree_cluster_count(const mlcc_tree* tree, int32_t level, int32_t* out);

/* Mean purity of the clusters born in the first 10 splits. The dataset must
 * be the rescaled one the field was computed from and carry labels.
 * warning is set when fewer than 20 clusters were available. */
mlcc_status mlcc_tree_purity(const mlcc_tree* tree, const mlcc_dataset* dataset,
                             double* average, int32_t* clusters, int* warning);
void mlcc_tree_free(mlcc_tree* tree);

/* AUC of "lower p-value means more anomalous" with the dataset's noise
 * flags as ground truth. */
mlcc_status mlcc_anomaly_auc(const mlcc_field* field, const mlcc_dataset* dataset,
                             double* auc, int64_t* positives, int64_t* negatives);

/* ---- single-linkage baseline ------------------------------------------- */

mlcc_status mlcc_hc_build(const mlcc_dataset* dataset, mlcc_hc** out);
int64_t mlcc_hc_num_merges(const mlcc_hc* hc);
mlcc_status mlcc_hc_merge_at(const mlcc_hc* hc, int64_t i, int32_t* a, int32_t* b,
                             double* distance);
/* labels_out must hold n entries; labels are 0..k-1 by first appearance. */
mlcc_status mlcc_hc_cut(const mlcc_hc* hc, int32_t k, int32_t* labels_out);
mlcc_status mlcc_hc_purity(const mlcc_hc* hc, const mlcc_dataset* dataset, double* average,
                           int32_t* clusters, int* warning);
void mlcc_hc_free(mlcc_hc* hc);

/* ---- end-to-end pipeline ----------------------------------------------- */

/* config_json keys: mode (cluster|field|tree), input, field_path,
 * label_column, binarize_label, scale, resolution, k, ladder, stride,
 * adjacency, workers, outdir, svg_eps, svg, node_budget. Writes artifacts
 * under outdir and returns a JSON summary (free with mlcc_string_free). */
mlcc_status mlcc_pipeline_run(const char* config_json, char** summary_json);

void mlcc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* MLCC_H */
