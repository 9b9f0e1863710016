#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/dataio.hpp"
#include "core/model.hpp"

namespace caea {

enum class Algorithm { caea, hcaea };

struct RunConfig {
    std::string dataset_name;
    std::string dataset_path;
    bool has_header = false;
    int label_column = -1;
    Algorithm algorithm = Algorithm::caea;
    CaeaParams params;
    StreamMode env = StreamMode::stationary;
    int repeats = 2;
    int folds = 10;
    std::uint64_t seed = 1;
};

struct FoldRecord {
    int repeat = 0;
    int fold = 0;
    bool ok = false;
    std::string reason;  // set on failed folds
    double accuracy = 0.0;
    double nmi = 0.0;
    double ari = 0.0;
    double macro_f1 = 0.0;
    std::int64_t node_count = 0;  // root layer for hcaea
    std::int64_t leaf_count = 0;
    int depth = 0;
    double train_seconds = 0.0;  // excluded from deterministic outputs
};

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;  // sample convention (N-1); 0 below two samples
    int count = 0;
};

struct EvalReport {
    std::vector<FoldRecord> folds;  // sorted by (repeat, fold)
    // keys: accuracy, nmi, ari, macro_f1, node_count, leaf_count, depth
    std::map<std::string, Aggregate> aggregates;
    int expected_folds = 0;  // repeats x folds
};

/// Cross-validated train/score run following the configured environment.
/// A fold whose training split is too small to initialize, or that throws,
/// is recorded as failed with its reason; aggregates cover the folds that
/// evaluated. Deterministic given the config (wall times aside).
EvalReport run_eval(const Dataset& ds, const RunConfig& config);

/// Writes config.json, folds.csv, summary.csv, and report.json into out_dir
/// (created if missing). All content except the train_seconds column of
/// folds.csv is byte-reproducible for a fixed config.
void write_eval_report(const EvalReport& report, const RunConfig& config,
                       const std::string& out_dir);

struct GridCell {
    int lambda = 0;
    EvalReport report;
};

struct GridReport {
    std::vector<GridCell> cells;  // ascending lambda
    int best_lambda = 0;          // max mean NMI, ties to the smaller lambda
};

/// run_eval once per lambda (ascending, deduplicated), with config.params
/// otherwise unchanged.
GridReport run_grid(const Dataset& ds, const RunConfig& config,
                    std::vector<int> lambdas);

/// Writes grid_config.json, grid_nmi.csv (every per-fold NMI value),
/// grid_summary.csv (per-lambda quartiles), and grid_result.json.
void write_grid_report(const GridReport& grid, const RunConfig& config,
                       const std::string& out_dir);

const char* to_string(Algorithm a);
const char* to_string(StreamMode m);
const char* to_string(AgingPolicy p);

}  // namespace caea
