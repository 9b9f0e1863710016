#include "core/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/hierarchy.hpp"
#include "core/metrics.hpp"
#include "core/rng.hpp"
#include "core/serialize.hpp"

namespace caea {

using nlohmann::json;

const char* to_string(Algorithm a) {
    return a == Algorithm::caea ? "caea" : "hcaea";
}

const char* to_string(StreamMode m) {
    return m == StreamMode::stationary ? "stationary" : "nonstationary";
}

const char* to_string(AgingPolicy p) {
    return p == AgingPolicy::algorithm1 ? "algorithm1" : "prose";
}

namespace {

// Predictions carry class ids straight from the node label vote; -1 marks a
// prototype that never saw a labeled point.
constexpr int kNoLabel = -1;

struct FoldOutcome {
    std::vector<int> predicted;
    std::int64_t node_count = 0;
    std::int64_t leaf_count = 0;
    int depth = 0;
};

FoldOutcome train_and_predict(
    const Dataset& ds, const RunConfig& config,
    const std::vector<std::size_t>& train_order,
    const std::vector<std::size_t>& test_indices) {
    std::vector<std::vector<double>> points;
    std::vector<std::optional<int>> labels;
    points.reserve(train_order.size());
    labels.reserve(train_order.size());
    for (std::size_t i : train_order) {
        points.push_back(ds.points[i]);
        labels.emplace_back(ds.labels[i]);
    }
    FoldOutcome out;
    if (config.algorithm == Algorithm::caea) {
        CaeaModel model(config.params);
        model.fit(points, labels);
        out.node_count = static_cast<std::int64_t>(model.node_count());
        out.leaf_count = out.node_count;
        out.depth = 1;
        for (std::size_t i : test_indices) {
            const auto p = model.predict(ds.points[i]);
            out.predicted.push_back(p.label.value_or(kNoLabel));
        }
    } else {
        HcaeaTree tree = HcaeaTree::fit(points, labels, config.params);
        out.node_count = static_cast<std::int64_t>(tree.root().model.node_count());
        out.leaf_count = static_cast<std::int64_t>(tree.leaf_count());
        out.depth = tree.depth();
        for (std::size_t i : test_indices) {
            const auto p = tree.predict(ds.points[i]);
            out.predicted.push_back(p.label.value_or(kNoLabel));
        }
    }
    return out;
}

Aggregate aggregate_of(const std::vector<double>& values) {
    Aggregate a;
    a.count = static_cast<int>(values.size());
    if (values.empty()) return a;
    double sum = 0.0;
    for (double v : values) sum += v;
    a.mean = sum / static_cast<double>(values.size());
    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) {
            const double d = v - a.mean;
            ss += d * d;
        }
        a.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return a;
}

void fill_aggregates(EvalReport& report) {
    std::map<std::string, std::vector<double>> columns;
    for (const auto& f : report.folds) {
        if (!f.ok) continue;
        columns["accuracy"].push_back(f.accuracy);
        columns["nmi"].push_back(f.nmi);
        columns["ari"].push_back(f.ari);
        columns["macro_f1"].push_back(f.macro_f1);
        columns["node_count"].push_back(static_cast<double>(f.node_count));
        columns["leaf_count"].push_back(static_cast<double>(f.leaf_count));
        columns["depth"].push_back(static_cast<double>(f.depth));
    }
    for (const char* key : {"accuracy", "nmi", "ari", "macro_f1", "node_count",
                            "leaf_count", "depth"}) {
        report.aggregates[key] = aggregate_of(columns[key]);
    }
}

}  // namespace

EvalReport run_eval(const Dataset& ds, const RunConfig& config) {
    config.params.validate();
    const FoldPlan plan = make_folds(ds, config.repeats, config.folds, config.seed);
    const auto isz = static_cast<std::size_t>(init_size(config.params));

    EvalReport report;
    report.expected_folds = config.repeats * config.folds;
    for (int r = 0; r < config.repeats; ++r) {
        const auto& assignment = plan.assignments[static_cast<std::size_t>(r)];
        for (int f = 0; f < config.folds; ++f) {
            FoldRecord rec;
            rec.repeat = r;
            rec.fold = f;
            std::vector<std::size_t> train_idx;
            std::vector<std::size_t> test_idx;
            for (std::size_t i = 0; i < ds.size(); ++i) {
                (assignment[i] == f ? test_idx : train_idx).push_back(i);
            }
            if (train_idx.size() < isz) {
                rec.reason = "training split of " +
                             std::to_string(train_idx.size()) +
                             " points cannot reach initialization size " +
                             std::to_string(isz);
                report.folds.push_back(std::move(rec));
                continue;
            }
            try {
                const std::uint64_t stream_seed =
                    derive_seed(config.seed, static_cast<std::uint64_t>(r),
                                static_cast<std::uint64_t>(f));
                const auto order =
                    order_stream(ds, train_idx, config.env, stream_seed);
                const auto t0 = std::chrono::steady_clock::now();
                const FoldOutcome outcome =
                    train_and_predict(ds, config, order, test_idx);
                rec.train_seconds =
                    std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
                std::vector<int> truth;
                truth.reserve(test_idx.size());
                for (std::size_t i : test_idx) truth.push_back(ds.labels[i]);
                rec.accuracy = accuracy(truth, outcome.predicted);
                rec.nmi = nmi(truth, outcome.predicted);
                rec.ari = ari(truth, outcome.predicted);
                rec.macro_f1 = macro_f1(truth, outcome.predicted);
                rec.node_count = outcome.node_count;
                rec.leaf_count = outcome.leaf_count;
                rec.depth = outcome.depth;
                rec.ok = true;
            } catch (const std::exception& e) {
                rec.ok = false;
                rec.reason = e.what();
            }
            report.folds.push_back(std::move(rec));
        }
    }
    fill_aggregates(report);
    return report;
}

namespace {

json config_to_json(const RunConfig& config) {
    json j;
    j["dataset"] = config.dataset_name;
    j["dataset_path"] = config.dataset_path;
    j["has_header"] = config.has_header;
    j["label_column"] = config.label_column;
    j["algorithm"] = to_string(config.algorithm);
    j["params"] = params_to_json(config.params);
    j["env"] = to_string(config.env);
    j["repeats"] = config.repeats;
    j["folds"] = config.folds;
    j["seed"] = config.seed;
    return j;
}

std::string provenance_prefix(const RunConfig& config, int lambda) {
    std::string s;
    s += config.dataset_name;
    s += ',';
    s += to_string(config.algorithm);
    s += ',';
    s += to_string(config.env);
    s += ',';
    s += std::to_string(lambda);
    s += ',';
    s += std::to_string(config.params.age_max);
    s += ',';
    s += std::to_string(config.seed);
    return s;
}

json record_to_json(const FoldRecord& f) {
    json r;
    r["repeat"] = f.repeat;
    r["fold"] = f.fold;
    r["status"] = f.ok ? "ok" : "failed";
    if (f.ok) {
        r["accuracy"] = f.accuracy;
        r["nmi"] = f.nmi;
        r["ari"] = f.ari;
        r["macro_f1"] = f.macro_f1;
        r["node_count"] = f.node_count;
        r["leaf_count"] = f.leaf_count;
        r["depth"] = f.depth;
    } else {
        r["reason"] = f.reason;
    }
    return r;
}

json aggregates_to_json(const EvalReport& report) {
    json a = json::object();
    for (const auto& [key, agg] : report.aggregates) {
        a[key] = {{"mean", agg.mean}, {"std", agg.stddev}, {"count", agg.count}};
    }
    return a;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write file: " + path);
    out << content;
    if (!out) throw data_error("failed writing file: " + path);
}

std::string sanitize_reason(std::string reason) {
    for (char& c : reason) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return reason;
}

std::string folds_csv(const EvalReport& report, const RunConfig& config,
                      int lambda) {
    std::string csv =
        "dataset,algorithm,env,lambda,age_max,seed,repeat,fold,status,reason,"
        "accuracy,nmi,ari,macro_f1,node_count,leaf_count,depth,train_seconds\n";
    for (const auto& f : report.folds) {
        csv += provenance_prefix(config, lambda);
        csv += ',' + std::to_string(f.repeat);
        csv += ',' + std::to_string(f.fold);
        if (f.ok) {
            csv += ",ok,";
            csv += ',' + format_double(f.accuracy);
            csv += ',' + format_double(f.nmi);
            csv += ',' + format_double(f.ari);
            csv += ',' + format_double(f.macro_f1);
            csv += ',' + std::to_string(f.node_count);
            csv += ',' + std::to_string(f.leaf_count);
            csv += ',' + std::to_string(f.depth);
            csv += ',' + format_double(f.train_seconds);
        } else {
            csv += ",failed," + sanitize_reason(f.reason) + ",,,,,,,,";
        }
        csv += '\n';
    }
    return csv;
}

std::string summary_csv(const EvalReport& report) {
    std::string csv = "metric,mean,std,count\n";
    for (const char* key : {"accuracy", "nmi", "ari", "macro_f1", "node_count",
                            "leaf_count", "depth"}) {
        const Aggregate& a = report.aggregates.at(key);
        csv += std::string(key) + ',' + format_double(a.mean) + ',' +
               format_double(a.stddev) + ',' + std::to_string(a.count) + '\n';
    }
    return csv;
}

}  // namespace

void write_eval_report(const EvalReport& report, const RunConfig& config,
                       const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto path = [&](const char* name) {
        return (std::filesystem::path(out_dir) / name).string();
    };
    write_text_file(path("config.json"), config_to_json(config).dump(2) + "\n");
    write_text_file(path("folds.csv"),
                    folds_csv(report, config, config.params.lambda));
    write_text_file(path("summary.csv"), summary_csv(report));

    json full;
    full["config"] = config_to_json(config);
    full["expected_folds"] = report.expected_folds;
    json records = json::array();
    for (const auto& f : report.folds) records.push_back(record_to_json(f));
    full["folds"] = std::move(records);
    full["aggregates"] = aggregates_to_json(report);
    write_text_file(path("report.json"), full.dump(2) + "\n");
}

GridReport run_grid(const Dataset& ds, const RunConfig& config,
                    std::vector<int> lambdas) {
    if (lambdas.empty()) {
        throw std::invalid_argument("run_grid: empty lambda list");
    }
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

    GridReport grid;
    double best_mean = -std::numeric_limits<double>::infinity();
    for (int lambda : lambdas) {
        RunConfig cell_config = config;
        cell_config.params.lambda = lambda;
        GridCell cell;
        cell.lambda = lambda;
        cell.report = run_eval(ds, cell_config);
        const Aggregate& nmi_agg = cell.report.aggregates.at("nmi");
        if (nmi_agg.count > 0 && nmi_agg.mean > best_mean) {
            best_mean = nmi_agg.mean;
            grid.best_lambda = lambda;  // ascending scan keeps smaller ties
        }
        grid.cells.push_back(std::move(cell));
    }
    if (!std::isfinite(best_mean)) {
        throw invalid_state("run_grid: no lambda produced an evaluated fold");
    }
    return grid;
}

namespace {

double quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

void write_grid_report(const GridReport& grid, const RunConfig& config,
                       const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto path = [&](const char* name) {
        return (std::filesystem::path(out_dir) / name).string();
    };

    json cfg = config_to_json(config);
    json lambdas = json::array();
    for (const auto& cell : grid.cells) lambdas.push_back(cell.lambda);
    cfg["lambda_grid"] = std::move(lambdas);
    cfg["params"].erase("lambda");  // varied per cell
    write_text_file(path("grid_config.json"), cfg.dump(2) + "\n");

    std::string values_csv =
        "dataset,algorithm,env,lambda,age_max,seed,repeat,fold,nmi\n";
    std::string summary_csv =
        "lambda,count,mean_nmi,std_nmi,min,q1,median,q3,max\n";
    for (const auto& cell : grid.cells) {
        std::vector<double> nmis;
        for (const auto& f : cell.report.folds) {
            if (!f.ok) continue;
            nmis.push_back(f.nmi);
            values_csv += config.dataset_name;
            values_csv += ',';
            values_csv += to_string(config.algorithm);
            values_csv += ',';
            values_csv += to_string(config.env);
            values_csv += ',' + std::to_string(cell.lambda);
            values_csv += ',' + std::to_string(config.params.age_max);
            values_csv += ',' + std::to_string(config.seed);
            values_csv += ',' + std::to_string(f.repeat);
            values_csv += ',' + std::to_string(f.fold);
            values_csv += ',' + format_double(f.nmi);
            values_csv += '\n';
        }
        std::sort(nmis.begin(), nmis.end());
        const Aggregate& agg = cell.report.aggregates.at("nmi");
        summary_csv += std::to_string(cell.lambda);
        summary_csv += ',' + std::to_string(agg.count);
        summary_csv += ',' + format_double(agg.mean);
        summary_csv += ',' + format_double(agg.stddev);
        summary_csv += ',' + format_double(nmis.empty() ? 0.0 : nmis.front());
        summary_csv += ',' + format_double(quantile(nmis, 0.25));
        summary_csv += ',' + format_double(quantile(nmis, 0.5));
        summary_csv += ',' + format_double(quantile(nmis, 0.75));
        summary_csv += ',' + format_double(nmis.empty() ? 0.0 : nmis.back());
        summary_csv += '\n';
    }
    write_text_file(path("grid_nmi.csv"), values_csv);
    write_text_file(path("grid_summary.csv"), summary_csv);

    json result;
    result["best_lambda"] = grid.best_lambda;
    result["criterion"] = "max mean nmi";
    result["tie_break"] = "smallest lambda";
    write_text_file(path("grid_result.json"), result.dump(2) + "\n");
}

}  // namespace caea
