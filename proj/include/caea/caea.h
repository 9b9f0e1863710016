/* caea: online topological clustering (CAEA) and its divisive hierarchy
 * (HCAEA), with the cross-validated evaluation harness behind a plain C
 * interface.
 *
 * All functions return caea_status; caea_last_error() describes the most
 * recent failure on the calling thread. Handles are opaque and owned by the
 * caller until the matching *_destroy call. A handle may be read from many
 * threads at once, but mutating calls (learn/fit) require exclusive access.
 */
#ifndef CAEA_H
#define CAEA_H

#include <stdint.h>

#if defined(_WIN32)
#define CAEA_API __declspec(dllexport)
#else
#define CAEA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum caea_status {
    CAEA_STATUS_OK = 0,
    CAEA_STATUS_INVALID_ARGUMENT = 1, /* bad call arguments */
    CAEA_STATUS_INVALID_STATE = 2,    /* object not ready for the operation */
    CAEA_STATUS_CONFIG_ERROR = 3,     /* rejected parameter combination */
    CAEA_STATUS_DATA_ERROR = 4,       /* unreadable or malformed input */
    CAEA_STATUS_INTERNAL_ERROR = 5    /* broken invariant; please report */
} caea_status;

/* Message for the last failure on this thread; never NULL. */
CAEA_API const char* caea_last_error(void);
CAEA_API const char* caea_version(void);

enum { CAEA_AGING_ALGORITHM1 = 0, CAEA_AGING_PROSE = 1 };
enum { CAEA_ENV_STATIONARY = 0, CAEA_ENV_NONSTATIONARY = 1 };
enum { CAEA_ALGORITHM_CAEA = 0, CAEA_ALGORITHM_HCAEA = 1 };
enum { CAEA_LABEL_NONE = -1 };
enum { CAEA_FILE_MODEL = 0, CAEA_FILE_TREE = 1 };

typedef struct caea_params {
    int32_t lambda;        /* bandwidth/cleanup interval; >= 4 normally */
    int32_t age_max;       /* edge age limit, default 10 */
    int32_t aging_policy;  /* CAEA_AGING_* */
    int32_t recurse_min_k; /* hierarchy growth threshold, default 3 */
    double v_threshold_override; /* NaN = estimate automatically */
} caea_params;

/* Fills defaults: lambda 20, age_max 10, algorithm1 aging, recurse_min_k 3,
 * no vigilance override. */
CAEA_API void caea_params_init(caea_params* params);

/* ------------------------------------------------------------------ */
/* datasets                                                            */

typedef struct caea_dataset caea_dataset;

/* CSV ingestion: numeric features, one categorical label column
 * (label_column -1 = last). Class ids are 0..C-1 in first-appearance
 * order. */
CAEA_API caea_status caea_dataset_load_csv(const char* path, int has_header,
                                           int32_t label_column,
                                           caea_dataset** out);
CAEA_API int64_t caea_dataset_size(const caea_dataset* ds);
CAEA_API int32_t caea_dataset_dim(const caea_dataset* ds);
CAEA_API int32_t caea_dataset_num_classes(const caea_dataset* ds);
/* Copies the point's features into features[0..dim); label may be NULL. */
CAEA_API caea_status caea_dataset_point(const caea_dataset* ds, int64_t index,
                                        double* features, int32_t* label);
/* Pointer stays valid for the dataset's lifetime. */
CAEA_API caea_status caea_dataset_class_name(const caea_dataset* ds,
                                             int32_t label, const char** name);
/* Fills out_indices[0..size) with the training presentation order:
 * stationary = seeded shuffle, nonstationary = class blocks in ascending id
 * order, shuffled within each block. */
CAEA_API caea_status caea_dataset_order(const caea_dataset* ds,
                                        int32_t environment, uint64_t seed,
                                        int64_t* out_indices);
CAEA_API void caea_dataset_destroy(caea_dataset* ds);

/* ------------------------------------------------------------------ */
/* flat models                                                         */

typedef struct caea_model caea_model;

CAEA_API caea_status caea_model_create(const caea_params* params,
                                       caea_model** out);
/* One online learning step; label CAEA_LABEL_NONE for unlabeled input. */
CAEA_API caea_status caea_model_learn(caea_model* model, const double* x,
                                      int32_t dim, int32_t label);
/* Nearest-node lookup. Outputs may be NULL; label is the node's majority
 * class or CAEA_LABEL_NONE, cluster the node's connected component. */
CAEA_API caea_status caea_model_predict(const caea_model* model,
                                        const double* x, int32_t dim,
                                        int64_t* node_index, int32_t* label,
                                        int64_t* cluster);
CAEA_API int64_t caea_model_node_count(const caea_model* model);
CAEA_API int64_t caea_model_edge_count(const caea_model* model);
CAEA_API int64_t caea_model_cluster_count(const caea_model* model);
CAEA_API int64_t caea_model_input_count(const caea_model* model);
/* CAEA_STATUS_INVALID_STATE while initialization has not finished. */
CAEA_API caea_status caea_model_vigilance_threshold(const caea_model* model,
                                                    double* out);
CAEA_API caea_status caea_model_save(const caea_model* model,
                                     const char* path);
CAEA_API caea_status caea_model_load(const char* path, caea_model** out);
/* Lossless JSON state; free with caea_string_free. */
CAEA_API caea_status caea_model_to_json(const caea_model* model, char** out);
CAEA_API void caea_model_destroy(caea_model* model);

/* ------------------------------------------------------------------ */
/* hierarchies                                                         */

typedef struct caea_tree caea_tree;

CAEA_API caea_status caea_tree_create(const caea_params* params,
                                      caea_tree** out);
/* Trains on a batch of n points (row-major, n x dim); labels may be NULL.
 * The first call builds the hierarchy; later calls extend it, rebuilding
 * only subtrees whose data subset changed. */
CAEA_API caea_status caea_tree_fit(caea_tree* tree, const double* points,
                                   const int32_t* labels, int64_t n,
                                   int32_t dim);
/* Descends to the nearest childless prototype. path (may be NULL) receives
 * up to path_capacity prototype indices, one per layer; *path_len reports
 * the full path length. */
CAEA_API caea_status caea_tree_predict(const caea_tree* tree, const double* x,
                                       int32_t dim, int32_t* label,
                                       int64_t* path, int64_t path_capacity,
                                       int64_t* path_len);
CAEA_API int64_t caea_tree_leaf_count(const caea_tree* tree);
CAEA_API int64_t caea_tree_depth(const caea_tree* tree);
CAEA_API int64_t caea_tree_root_node_count(const caea_tree* tree);
CAEA_API caea_status caea_tree_save(const caea_tree* tree, const char* path);
CAEA_API caea_status caea_tree_load(const char* path, caea_tree** out);
CAEA_API caea_status caea_tree_to_json(const caea_tree* tree, char** out);
CAEA_API void caea_tree_destroy(caea_tree* tree);

/* CAEA_FILE_MODEL or CAEA_FILE_TREE for a saved state file. */
CAEA_API caea_status caea_file_kind(const char* path, int32_t* kind);
CAEA_API void caea_string_free(char* s);

/* ------------------------------------------------------------------ */
/* evaluation metrics over class-id arrays                             */

CAEA_API caea_status caea_metric_accuracy(const int32_t* truth,
                                          const int32_t* predicted, int64_t n,
                                          double* out);
CAEA_API caea_status caea_metric_nmi(const int32_t* truth,
                                     const int32_t* predicted, int64_t n,
                                     double* out);
CAEA_API caea_status caea_metric_ari(const int32_t* truth,
                                     const int32_t* predicted, int64_t n,
                                     double* out);
CAEA_API caea_status caea_metric_macro_f1(const int32_t* truth,
                                          const int32_t* predicted, int64_t n,
                                          double* out);

/* ------------------------------------------------------------------ */
/* cross-validated evaluation harness                                  */

typedef struct caea_eval_config {
    const char* dataset_path;
    int32_t has_header;
    int32_t label_column; /* -1 = last */
    int32_t algorithm;    /* CAEA_ALGORITHM_* */
    caea_params params;
    int32_t environment; /* CAEA_ENV_* */
    int32_t repeats;
    int32_t folds;
    uint64_t seed;
} caea_eval_config;

/* Defaults: CAEA, stationary, 2 x 10 folds, seed 1, label column last. */
CAEA_API void caea_eval_config_init(caea_eval_config* config);

typedef struct caea_eval_summary {
    double accuracy_mean, accuracy_std;
    double nmi_mean, nmi_std;
    double ari_mean, ari_std;
    double macro_f1_mean, macro_f1_std;
    double node_count_mean;
    double leaf_count_mean;
    double depth_mean;
    int32_t evaluated_folds;
    int32_t failed_folds;
} caea_eval_summary;

/* Runs the full repeats x folds protocol and writes config.json, folds.csv,
 * summary.csv, and report.json into out_dir. Identical configs reproduce the
 * files byte for byte except the train_seconds column. summary may be NULL. */
CAEA_API caea_status caea_run_eval(const caea_eval_config* config,
                                   const char* out_dir,
                                   caea_eval_summary* summary);

/* Runs caea_run_eval per lambda and writes the NMI distributions
 * (grid_nmi.csv, grid_summary.csv, grid_result.json). best_lambda (may be
 * NULL) receives the lambda with the highest mean NMI, ties to the smaller
 * value. */
CAEA_API caea_status caea_run_grid(const caea_eval_config* config,
                                   const int32_t* lambdas,
                                   int32_t lambda_count, const char* out_dir,
                                   int32_t* best_lambda);

#ifdef __cplusplus
}
#endif

#endif /* CAEA_H */
