#include "caea/caea.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/dataio.hpp"
#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/hierarchy.hpp"
#include "core/metrics.hpp"
#include "core/model.hpp"
#include "core/serialize.hpp"

struct caea_dataset {
    caea::Dataset impl;
};

struct caea_model {
    caea::CaeaModel impl;
};

struct caea_tree {
    caea::HcaeaTree impl;
};

namespace {

thread_local std::string g_last_error = "";

template <typename Fn>
caea_status wrap(Fn&& fn) {
    try {
        fn();
        return CAEA_STATUS_OK;
    } catch (const caea::config_error& e) {
        g_last_error = e.what();
        return CAEA_STATUS_CONFIG_ERROR;
    } catch (const caea::data_error& e) {
        g_last_error = e.what();
        return CAEA_STATUS_DATA_ERROR;
    } catch (const caea::invalid_state& e) {
        g_last_error = e.what();
        return CAEA_STATUS_INVALID_STATE;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return CAEA_STATUS_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CAEA_STATUS_INTERNAL_ERROR;
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

caea::CaeaParams convert(const caea_params& p) {
    caea::CaeaParams out;
    out.lambda = p.lambda;
    out.age_max = p.age_max;
    out.aging_policy = p.aging_policy == CAEA_AGING_PROSE
                           ? caea::AgingPolicy::prose
                           : caea::AgingPolicy::algorithm1;
    out.recurse_min_k = p.recurse_min_k;
    if (!std::isnan(p.v_threshold_override)) {
        out.v_threshold_override = p.v_threshold_override;
    }
    return out;
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

using MetricFn = double (*)(std::span<const int>, std::span<const int>);

caea_status run_metric(MetricFn fn, const int32_t* truth,
                       const int32_t* predicted, int64_t n, double* out) {
    return wrap([&] {
        require(truth != nullptr && predicted != nullptr && out != nullptr,
                "null argument");
        require(n > 0, "empty label arrays");
        std::vector<int> t(truth, truth + n);
        std::vector<int> p(predicted, predicted + n);
        *out = fn(t, p);
    });
}

caea::RunConfig convert(const caea_eval_config& c) {
    require(c.dataset_path != nullptr, "dataset_path is null");
    caea::RunConfig out;
    out.dataset_path = c.dataset_path;
    out.dataset_name = std::filesystem::path(c.dataset_path).stem().string();
    out.has_header = c.has_header != 0;
    out.label_column = c.label_column;
    out.algorithm = c.algorithm == CAEA_ALGORITHM_HCAEA
                        ? caea::Algorithm::hcaea
                        : caea::Algorithm::caea;
    out.params = convert(c.params);
    out.env = c.environment == CAEA_ENV_NONSTATIONARY
                  ? caea::StreamMode::nonstationary
                  : caea::StreamMode::stationary;
    out.repeats = c.repeats;
    out.folds = c.folds;
    out.seed = c.seed;
    return out;
}

void fill_summary(const caea::EvalReport& report, caea_eval_summary* summary) {
    if (summary == nullptr) return;
    const auto& agg = report.aggregates;
    summary->accuracy_mean = agg.at("accuracy").mean;
    summary->accuracy_std = agg.at("accuracy").stddev;
    summary->nmi_mean = agg.at("nmi").mean;
    summary->nmi_std = agg.at("nmi").stddev;
    summary->ari_mean = agg.at("ari").mean;
    summary->ari_std = agg.at("ari").stddev;
    summary->macro_f1_mean = agg.at("macro_f1").mean;
    summary->macro_f1_std = agg.at("macro_f1").stddev;
    summary->node_count_mean = agg.at("node_count").mean;
    summary->leaf_count_mean = agg.at("leaf_count").mean;
    summary->depth_mean = agg.at("depth").mean;
    summary->evaluated_folds = agg.at("accuracy").count;
    summary->failed_folds =
        static_cast<int32_t>(report.folds.size()) - agg.at("accuracy").count;
}

}  // namespace

extern "C" {

const char* caea_last_error(void) { return g_last_error.c_str(); }

const char* caea_version(void) { return "1.0.0"; }

void caea_params_init(caea_params* params) {
    if (params == nullptr) return;
    params->lambda = 20;
    params->age_max = 10;
    params->aging_policy = CAEA_AGING_ALGORITHM1;
    params->recurse_min_k = 3;
    params->v_threshold_override = NAN;
}

caea_status caea_dataset_load_csv(const char* path, int has_header,
                                  int32_t label_column, caea_dataset** out) {
    return wrap([&] {
        require(path != nullptr && out != nullptr, "null argument");
        auto ds = caea::load_csv(path, has_header != 0, label_column);
        *out = new caea_dataset{std::move(ds)};
    });
}

int64_t caea_dataset_size(const caea_dataset* ds) {
    return ds == nullptr ? 0 : static_cast<int64_t>(ds->impl.size());
}

int32_t caea_dataset_dim(const caea_dataset* ds) {
    return ds == nullptr ? 0 : ds->impl.dim();
}

int32_t caea_dataset_num_classes(const caea_dataset* ds) {
    return ds == nullptr ? 0 : ds->impl.num_classes();
}

caea_status caea_dataset_point(const caea_dataset* ds, int64_t index,
                               double* features, int32_t* label) {
    return wrap([&] {
        require(ds != nullptr, "null dataset");
        require(index >= 0 && index < static_cast<int64_t>(ds->impl.size()),
                "point index out of range");
        const auto& p = ds->impl.points[static_cast<std::size_t>(index)];
        if (features != nullptr) {
            std::memcpy(features, p.data(), p.size() * sizeof(double));
        }
        if (label != nullptr) {
            *label = ds->impl.labels[static_cast<std::size_t>(index)];
        }
    });
}

caea_status caea_dataset_class_name(const caea_dataset* ds, int32_t label,
                                    const char** name) {
    return wrap([&] {
        require(ds != nullptr && name != nullptr, "null argument");
        require(label >= 0 && label < ds->impl.num_classes(),
                "class id out of range");
        *name = ds->impl.class_names[static_cast<std::size_t>(label)].c_str();
    });
}

caea_status caea_dataset_order(const caea_dataset* ds, int32_t environment,
                               uint64_t seed, int64_t* out_indices) {
    return wrap([&] {
        require(ds != nullptr && out_indices != nullptr, "null argument");
        std::vector<std::size_t> all(ds->impl.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        const auto mode = environment == CAEA_ENV_NONSTATIONARY
                              ? caea::StreamMode::nonstationary
                              : caea::StreamMode::stationary;
        const auto order = caea::order_stream(ds->impl, all, mode, seed);
        for (std::size_t i = 0; i < order.size(); ++i) {
            out_indices[i] = static_cast<int64_t>(order[i]);
        }
    });
}

void caea_dataset_destroy(caea_dataset* ds) { delete ds; }

caea_status caea_model_create(const caea_params* params, caea_model** out) {
    return wrap([&] {
        require(params != nullptr && out != nullptr, "null argument");
        *out = new caea_model{caea::CaeaModel(convert(*params))};
    });
}

caea_status caea_model_learn(caea_model* model, const double* x, int32_t dim,
                             int32_t label) {
    return wrap([&] {
        require(model != nullptr && x != nullptr && dim > 0, "null argument");
        std::optional<int> lab;
        if (label != CAEA_LABEL_NONE) lab = label;
        model->impl.learn({x, static_cast<std::size_t>(dim)}, lab);
    });
}

caea_status caea_model_predict(const caea_model* model, const double* x,
                               int32_t dim, int64_t* node_index,
                               int32_t* label, int64_t* cluster) {
    return wrap([&] {
        require(model != nullptr && x != nullptr && dim > 0, "null argument");
        const auto p = model->impl.predict({x, static_cast<std::size_t>(dim)});
        if (node_index != nullptr) *node_index = static_cast<int64_t>(p.node);
        if (label != nullptr) *label = p.label.value_or(CAEA_LABEL_NONE);
        if (cluster != nullptr) *cluster = static_cast<int64_t>(p.cluster);
    });
}

int64_t caea_model_node_count(const caea_model* model) {
    return model == nullptr ? 0
                            : static_cast<int64_t>(model->impl.node_count());
}

int64_t caea_model_edge_count(const caea_model* model) {
    return model == nullptr
               ? 0
               : static_cast<int64_t>(model->impl.edge_store().edge_count());
}

int64_t caea_model_cluster_count(const caea_model* model) {
    return model == nullptr
               ? 0
               : static_cast<int64_t>(model->impl.component_count());
}

int64_t caea_model_input_count(const caea_model* model) {
    return model == nullptr ? 0 : model->impl.input_count();
}

caea_status caea_model_vigilance_threshold(const caea_model* model,
                                           double* out) {
    return wrap([&] {
        require(model != nullptr && out != nullptr, "null argument");
        const auto vt = model->impl.v_threshold();
        if (!vt) {
            throw caea::invalid_state("vigilance threshold not estimated yet");
        }
        *out = *vt;
    });
}

caea_status caea_model_save(const caea_model* model, const char* path) {
    return wrap([&] {
        require(model != nullptr && path != nullptr, "null argument");
        caea::save_json_file(caea::model_to_json(model->impl), path);
    });
}

caea_status caea_model_load(const char* path, caea_model** out) {
    return wrap([&] {
        require(path != nullptr && out != nullptr, "null argument");
        auto model = caea::model_from_json(caea::load_json_file(path));
        *out = new caea_model{std::move(model)};
    });
}

caea_status caea_model_to_json(const caea_model* model, char** out) {
    return wrap([&] {
        require(model != nullptr && out != nullptr, "null argument");
        *out = copy_string(caea::model_to_json(model->impl).dump(2));
    });
}

void caea_model_destroy(caea_model* model) { delete model; }

caea_status caea_tree_create(const caea_params* params, caea_tree** out) {
    return wrap([&] {
        require(params != nullptr && out != nullptr, "null argument");
        *out = new caea_tree{caea::HcaeaTree(convert(*params))};
    });
}

caea_status caea_tree_fit(caea_tree* tree, const double* points,
                          const int32_t* labels, int64_t n, int32_t dim) {
    return wrap([&] {
        require(tree != nullptr && points != nullptr, "null argument");
        require(n > 0 && dim > 0, "batch must be non-empty");
        std::vector<std::vector<double>> batch;
        std::vector<std::optional<int>> batch_labels;
        batch.reserve(static_cast<std::size_t>(n));
        for (int64_t i = 0; i < n; ++i) {
            const double* row = points + i * dim;
            batch.emplace_back(row, row + dim);
            if (labels != nullptr) {
                if (labels[i] == CAEA_LABEL_NONE) batch_labels.emplace_back();
                else batch_labels.emplace_back(labels[i]);
            }
        }
        tree->impl.fit_more(batch, batch_labels);
    });
}

caea_status caea_tree_predict(const caea_tree* tree, const double* x,
                              int32_t dim, int32_t* label, int64_t* path,
                              int64_t path_capacity, int64_t* path_len) {
    return wrap([&] {
        require(tree != nullptr && x != nullptr && dim > 0, "null argument");
        const auto p = tree->impl.predict({x, static_cast<std::size_t>(dim)});
        if (label != nullptr) *label = p.label.value_or(CAEA_LABEL_NONE);
        if (path_len != nullptr) {
            *path_len = static_cast<int64_t>(p.path.size());
        }
        if (path != nullptr) {
            const auto count = std::min<int64_t>(
                path_capacity, static_cast<int64_t>(p.path.size()));
            for (int64_t i = 0; i < count; ++i) {
                path[i] = static_cast<int64_t>(p.path[static_cast<std::size_t>(i)]);
            }
        }
    });
}

int64_t caea_tree_leaf_count(const caea_tree* tree) {
    return tree == nullptr ? 0 : static_cast<int64_t>(tree->impl.leaf_count());
}

int64_t caea_tree_depth(const caea_tree* tree) {
    return tree == nullptr ? 0 : tree->impl.depth();
}

int64_t caea_tree_root_node_count(const caea_tree* tree) {
    if (tree == nullptr || !tree->impl.trained()) return 0;
    return static_cast<int64_t>(tree->impl.root().model.node_count());
}

caea_status caea_tree_save(const caea_tree* tree, const char* path) {
    return wrap([&] {
        require(tree != nullptr && path != nullptr, "null argument");
        caea::save_json_file(caea::tree_to_json(tree->impl), path);
    });
}

caea_status caea_tree_load(const char* path, caea_tree** out) {
    return wrap([&] {
        require(path != nullptr && out != nullptr, "null argument");
        auto tree = caea::tree_from_json(caea::load_json_file(path));
        *out = new caea_tree{std::move(tree)};
    });
}

caea_status caea_tree_to_json(const caea_tree* tree, char** out) {
    return wrap([&] {
        require(tree != nullptr && out != nullptr, "null argument");
        *out = copy_string(caea::tree_to_json(tree->impl).dump(2));
    });
}

void caea_tree_destroy(caea_tree* tree) { delete tree; }

caea_status caea_file_kind(const char* path, int32_t* kind) {
    return wrap([&] {
        require(path != nullptr && kind != nullptr, "null argument");
        const auto fmt = caea::json_format(caea::load_json_file(path));
        *kind = fmt == caea::kModelFormat ? CAEA_FILE_MODEL : CAEA_FILE_TREE;
    });
}

void caea_string_free(char* s) { std::free(s); }

caea_status caea_metric_accuracy(const int32_t* truth,
                                 const int32_t* predicted, int64_t n,
                                 double* out) {
    return run_metric(&caea::accuracy, truth, predicted, n, out);
}

caea_status caea_metric_nmi(const int32_t* truth, const int32_t* predicted,
                            int64_t n, double* out) {
    return run_metric(&caea::nmi, truth, predicted, n, out);
}

caea_status caea_metric_ari(const int32_t* truth, const int32_t* predicted,
                            int64_t n, double* out) {
    return run_metric(&caea::ari, truth, predicted, n, out);
}

caea_status caea_metric_macro_f1(const int32_t* truth,
                                 const int32_t* predicted, int64_t n,
                                 double* out) {
    return run_metric(&caea::macro_f1, truth, predicted, n, out);
}

void caea_eval_config_init(caea_eval_config* config) {
    if (config == nullptr) return;
    config->dataset_path = nullptr;
    config->has_header = 0;
    config->label_column = -1;
    config->algorithm = CAEA_ALGORITHM_CAEA;
    caea_params_init(&config->params);
    config->environment = CAEA_ENV_STATIONARY;
    config->repeats = 2;
    config->folds = 10;
    config->seed = 1;
}

caea_status caea_run_eval(const caea_eval_config* config, const char* out_dir,
                          caea_eval_summary* summary) {
    return wrap([&] {
        require(config != nullptr && out_dir != nullptr, "null argument");
        const caea::RunConfig run = convert(*config);
        const caea::Dataset ds =
            caea::load_csv(run.dataset_path, run.has_header, run.label_column);
        const caea::EvalReport report = caea::run_eval(ds, run);
        caea::write_eval_report(report, run, out_dir);
        fill_summary(report, summary);
    });
}

caea_status caea_run_grid(const caea_eval_config* config,
                          const int32_t* lambdas, int32_t lambda_count,
                          const char* out_dir, int32_t* best_lambda) {
    return wrap([&] {
        require(config != nullptr && out_dir != nullptr, "null argument");
        require(lambdas != nullptr && lambda_count > 0, "empty lambda grid");
        const caea::RunConfig run = convert(*config);
        const caea::Dataset ds =
            caea::load_csv(run.dataset_path, run.has_header, run.label_column);
        std::vector<int> grid(lambdas, lambdas + lambda_count);
        const caea::GridReport report = caea::run_grid(ds, run, grid);
        caea::write_grid_report(report, run, out_dir);
        if (best_lambda != nullptr) *best_lambda = report.best_lambda;
    });
}

}  // extern "C"
