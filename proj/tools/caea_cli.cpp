// Command-line front end for libcaea. Everything goes through the public C
// interface in caea/caea.h; exit codes are 0 success, 2 configuration error,
// 3 data error, 4 internal error.

#include <caea/caea.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

int exit_code_for(caea_status status) {
    switch (status) {
        case CAEA_STATUS_OK:
            return 0;
        case CAEA_STATUS_INVALID_ARGUMENT:
        case CAEA_STATUS_INVALID_STATE:
        case CAEA_STATUS_CONFIG_ERROR:
            return 2;
        case CAEA_STATUS_DATA_ERROR:
            return 3;
        default:
            return 4;
    }
}

[[noreturn]] void fail(caea_status status, const std::string& context) {
    std::cerr << "error: " << context << ": " << caea_last_error() << "\n";
    std::exit(exit_code_for(status));
}

void check(caea_status status, const std::string& context) {
    if (status != CAEA_STATUS_OK) fail(status, context);
}

// Bare dataset names resolve against CAEA_DATA_DIR (or ./data as a last
// resort); explicit paths are used as given.
std::string resolve_dataset(const std::string& arg) {
    namespace fs = std::filesystem;
    if (fs::exists(arg)) return arg;
    if (arg.find('/') == std::string::npos) {
        std::vector<std::string> roots;
        if (const char* env = std::getenv("CAEA_DATA_DIR")) roots.push_back(env);
        roots.push_back("data");
        for (const auto& root : roots) {
            for (const auto& candidate :
                 {fs::path(root) / arg, fs::path(root) / (arg + ".csv")}) {
                if (fs::exists(candidate)) return candidate.string();
            }
        }
    }
    return arg;  // let the loader report the real error
}

struct CommonOptions {
    std::string data;
    bool has_header = false;
    int label_column = -1;
    std::string algorithm = "caea";
    int lambda = 20;
    int age_max = 10;
    std::string aging_policy = "algorithm1";
    int recurse_min_k = 3;
    double v_threshold = NAN;
    std::string env = "stationary";
    std::uint64_t seed = 1;
    std::string out_dir = "out";
};

void add_dataset_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--data", opt.data,
                    "dataset CSV path or bare name under $CAEA_DATA_DIR")
        ->required();
    cmd->add_flag("--has-header", opt.has_header, "skip the first CSV line");
    cmd->add_option("--label-column", opt.label_column,
                    "0-based label column, -1 = last");
}

void add_model_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--algo", opt.algorithm, "caea or hcaea")
        ->check(CLI::IsMember({"caea", "hcaea"}));
    cmd->add_option("--lambda", opt.lambda,
                    "interval for bandwidth adaptation and node cleanup")
        ->required();
    cmd->add_option("--age-max", opt.age_max, "edge age limit (default 10)");
    cmd->add_option("--aging-policy", opt.aging_policy,
                    "edge aging placement: algorithm1 or prose")
        ->check(CLI::IsMember({"algorithm1", "prose"}));
    cmd->add_option("--recurse-min-k", opt.recurse_min_k,
                    "minimum node count before the hierarchy grows a layer");
    cmd->add_option("--v-threshold", opt.v_threshold,
                    "explicit vigilance threshold override in (0,1)");
    cmd->add_option("--env", opt.env, "stationary or nonstationary")
        ->check(CLI::IsMember({"stationary", "nonstationary"}));
    cmd->add_option("--seed", opt.seed, "base random seed");
}

caea_params params_of(const CommonOptions& opt) {
    caea_params p;
    caea_params_init(&p);
    p.lambda = opt.lambda;
    p.age_max = opt.age_max;
    p.aging_policy = opt.aging_policy == "prose" ? CAEA_AGING_PROSE
                                                 : CAEA_AGING_ALGORITHM1;
    p.recurse_min_k = opt.recurse_min_k;
    p.v_threshold_override = opt.v_threshold;
    return p;
}

struct DatasetHandle {
    caea_dataset* ds = nullptr;
    ~DatasetHandle() { caea_dataset_destroy(ds); }
};

void load_dataset(const CommonOptions& opt, DatasetHandle& handle) {
    const std::string path = resolve_dataset(opt.data);
    check(caea_dataset_load_csv(path.c_str(), opt.has_header ? 1 : 0,
                                opt.label_column, &handle.ds),
          "loading " + path);
}

int run_train(const CommonOptions& opt) {
    DatasetHandle data;
    load_dataset(opt, data);
    const int64_t n = caea_dataset_size(data.ds);
    const int32_t dim = caea_dataset_dim(data.ds);
    std::vector<int64_t> order(static_cast<std::size_t>(n));
    const int env = opt.env == "nonstationary" ? CAEA_ENV_NONSTATIONARY
                                               : CAEA_ENV_STATIONARY;
    check(caea_dataset_order(data.ds, env, opt.seed, order.data()),
          "ordering stream");

    const caea_params params = params_of(opt);
    std::filesystem::create_directories(opt.out_dir);
    const auto started = std::chrono::steady_clock::now();

    if (opt.algorithm == "caea") {
        caea_model* model = nullptr;
        check(caea_model_create(&params, &model), "creating model");
        std::vector<double> x(static_cast<std::size_t>(dim));
        for (int64_t i : order) {
            int32_t label = CAEA_LABEL_NONE;
            check(caea_dataset_point(data.ds, i, x.data(), &label),
                  "reading point");
            check(caea_model_learn(model, x.data(), dim, label), "training");
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          started)
                .count();
        const std::string out =
            (std::filesystem::path(opt.out_dir) / "model.json").string();
        check(caea_model_save(model, out.c_str()), "saving model");
        std::cout << "trained caea: nodes=" << caea_model_node_count(model)
                  << " edges=" << caea_model_edge_count(model)
                  << " clusters=" << caea_model_cluster_count(model)
                  << " train_seconds=" << seconds << "\nmodel written to "
                  << out << "\n";
        caea_model_destroy(model);
    } else {
        std::vector<double> points(static_cast<std::size_t>(n * dim));
        std::vector<int32_t> labels(static_cast<std::size_t>(n));
        std::vector<double> x(static_cast<std::size_t>(dim));
        for (std::size_t row = 0; row < order.size(); ++row) {
            int32_t label = CAEA_LABEL_NONE;
            check(caea_dataset_point(data.ds, order[row], x.data(), &label),
                  "reading point");
            std::copy(x.begin(), x.end(),
                      points.begin() + static_cast<std::ptrdiff_t>(row * x.size()));
            labels[row] = label;
        }
        caea_tree* tree = nullptr;
        check(caea_tree_create(&params, &tree), "creating tree");
        check(caea_tree_fit(tree, points.data(), labels.data(), n, dim),
              "training");
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          started)
                .count();
        const std::string out =
            (std::filesystem::path(opt.out_dir) / "tree.json").string();
        check(caea_tree_save(tree, out.c_str()), "saving tree");
        std::cout << "trained hcaea: root_nodes="
                  << caea_tree_root_node_count(tree)
                  << " leaves=" << caea_tree_leaf_count(tree)
                  << " depth=" << caea_tree_depth(tree)
                  << " train_seconds=" << seconds << "\ntree written to "
                  << out << "\n";
        caea_tree_destroy(tree);
    }
    return 0;
}

caea_eval_config eval_config_of(const CommonOptions& opt,
                                const std::string& resolved_path,
                                int repeats, int folds) {
    caea_eval_config config;
    caea_eval_config_init(&config);
    config.dataset_path = resolved_path.c_str();
    config.has_header = opt.has_header ? 1 : 0;
    config.label_column = opt.label_column;
    config.algorithm = opt.algorithm == "hcaea" ? CAEA_ALGORITHM_HCAEA
                                                : CAEA_ALGORITHM_CAEA;
    config.params = params_of(opt);
    config.environment = opt.env == "nonstationary" ? CAEA_ENV_NONSTATIONARY
                                                    : CAEA_ENV_STATIONARY;
    config.repeats = repeats;
    config.folds = folds;
    config.seed = opt.seed;
    return config;
}

void print_summary(const caea_eval_summary& s) {
    std::cout << "folds evaluated=" << s.evaluated_folds
              << " failed=" << s.failed_folds << "\n";
    std::cout << "accuracy  " << s.accuracy_mean << " (" << s.accuracy_std
              << ")\n";
    std::cout << "nmi       " << s.nmi_mean << " (" << s.nmi_std << ")\n";
    std::cout << "ari       " << s.ari_mean << " (" << s.ari_std << ")\n";
    std::cout << "macro_f1  " << s.macro_f1_mean << " (" << s.macro_f1_std
              << ")\n";
    std::cout << "nodes     " << s.node_count_mean
              << "  leaves " << s.leaf_count_mean << "  depth "
              << s.depth_mean << "\n";
}

int run_eval_cmd(const CommonOptions& opt, int repeats, int folds) {
    const std::string path = resolve_dataset(opt.data);
    const caea_eval_config config = eval_config_of(opt, path, repeats, folds);
    caea_eval_summary summary;
    check(caea_run_eval(&config, opt.out_dir.c_str(), &summary), "eval run");
    print_summary(summary);
    std::cout << "reports written to " << opt.out_dir << "\n";
    return 0;
}

int run_grid_cmd(const CommonOptions& opt, int repeats, int folds,
                 const std::vector<int>& lambdas) {
    const std::string path = resolve_dataset(opt.data);
    const caea_eval_config config = eval_config_of(opt, path, repeats, folds);
    std::vector<int32_t> grid(lambdas.begin(), lambdas.end());
    int32_t best = 0;
    check(caea_run_grid(&config, grid.data(),
                        static_cast<int32_t>(grid.size()), opt.out_dir.c_str(),
                        &best),
          "grid run");
    std::cout << "best lambda by mean NMI: " << best << "\n";
    std::cout << "grid reports written to " << opt.out_dir << "\n";
    return 0;
}

int run_predict(const CommonOptions& opt, const std::string& model_path) {
    int32_t kind = 0;
    check(caea_file_kind(model_path.c_str(), &kind), "probing " + model_path);
    DatasetHandle data;
    load_dataset(opt, data);
    const int64_t n = caea_dataset_size(data.ds);
    const int32_t dim = caea_dataset_dim(data.ds);

    std::filesystem::create_directories(opt.out_dir);
    const std::string out_path =
        (std::filesystem::path(opt.out_dir) / "predictions.csv").string();
    std::ofstream out(out_path);
    if (!out) fail(CAEA_STATUS_DATA_ERROR, "writing " + out_path);

    std::vector<double> x(static_cast<std::size_t>(dim));
    std::vector<int32_t> truth(static_cast<std::size_t>(n));
    std::vector<int32_t> predicted(static_cast<std::size_t>(n));
    if (kind == CAEA_FILE_MODEL) {
        caea_model* model = nullptr;
        check(caea_model_load(model_path.c_str(), &model), "loading model");
        out << "index,truth,predicted,node,cluster\n";
        for (int64_t i = 0; i < n; ++i) {
            check(caea_dataset_point(data.ds, i, x.data(), &truth[i]),
                  "reading point");
            int64_t node = 0;
            int64_t cluster = 0;
            check(caea_model_predict(model, x.data(), dim, &node,
                                     &predicted[i], &cluster),
                  "predicting");
            out << i << ',' << truth[i] << ',' << predicted[i] << ',' << node
                << ',' << cluster << '\n';
        }
        caea_model_destroy(model);
    } else {
        caea_tree* tree = nullptr;
        check(caea_tree_load(model_path.c_str(), &tree), "loading tree");
        std::vector<int64_t> path(64);
        out << "index,truth,predicted,path\n";
        for (int64_t i = 0; i < n; ++i) {
            check(caea_dataset_point(data.ds, i, x.data(), &truth[i]),
                  "reading point");
            int64_t path_len = 0;
            check(caea_tree_predict(tree, x.data(), dim, &predicted[i],
                                    path.data(),
                                    static_cast<int64_t>(path.size()),
                                    &path_len),
                  "predicting");
            out << i << ',' << truth[i] << ',' << predicted[i] << ',';
            for (int64_t p = 0; p < path_len; ++p) {
                if (p > 0) out << '/';
                out << path[static_cast<std::size_t>(p)];
            }
            out << '\n';
        }
        caea_tree_destroy(tree);
    }
    double acc = 0.0;
    check(caea_metric_accuracy(truth.data(), predicted.data(), n, &acc),
          "scoring");
    std::cout << "predictions written to " << out_path << "\n";
    std::cout << "accuracy against file labels: " << acc << "\n";
    return 0;
}

int run_inspect(const std::string& model_path) {
    int32_t kind = 0;
    check(caea_file_kind(model_path.c_str(), &kind), "probing " + model_path);
    if (kind == CAEA_FILE_MODEL) {
        caea_model* model = nullptr;
        check(caea_model_load(model_path.c_str(), &model), "loading model");
        std::cout << "kind: caea model\n";
        std::cout << "nodes: " << caea_model_node_count(model) << "\n";
        std::cout << "edges: " << caea_model_edge_count(model) << "\n";
        std::cout << "clusters: " << caea_model_cluster_count(model) << "\n";
        std::cout << "inputs seen: " << caea_model_input_count(model) << "\n";
        double vt = 0.0;
        if (caea_model_vigilance_threshold(model, &vt) == CAEA_STATUS_OK) {
            std::cout << "vigilance threshold: " << vt << "\n";
        } else {
            std::cout << "vigilance threshold: not estimated yet\n";
        }
        caea_model_destroy(model);
    } else {
        caea_tree* tree = nullptr;
        check(caea_tree_load(model_path.c_str(), &tree), "loading tree");
        std::cout << "kind: hcaea tree\n";
        std::cout << "root nodes: " << caea_tree_root_node_count(tree) << "\n";
        std::cout << "leaves: " << caea_tree_leaf_count(tree) << "\n";
        std::cout << "depth: " << caea_tree_depth(tree) << "\n";
        caea_tree_destroy(tree);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"caea: online topological clustering and evaluation harness"};
    app.require_subcommand(1);

    CommonOptions opt;
    int repeats = 2;
    int folds = 10;
    std::vector<int> lambdas = {10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30};
    std::string model_path;

    CLI::App* train = app.add_subcommand(
        "train", "train on the full dataset and save the model/tree");
    add_dataset_flags(train, opt);
    add_model_flags(train, opt);
    train->add_option("--out", opt.out_dir, "output directory");

    CLI::App* eval = app.add_subcommand(
        "eval", "repeated stratified cross-validation with metric reports");
    add_dataset_flags(eval, opt);
    add_model_flags(eval, opt);
    eval->add_option("--repeats", repeats, "cross-validation repeats");
    eval->add_option("--folds", folds, "folds per repeat");
    eval->add_option("--out", opt.out_dir, "output directory");

    CLI::App* grid = app.add_subcommand(
        "grid", "lambda grid search reporting NMI distributions");
    add_dataset_flags(grid, opt);
    add_model_flags(grid, opt);
    grid->get_option("--lambda")->required(false);
    grid->add_option("--lambdas", lambdas, "lambda values to sweep")
        ->delimiter(',');
    grid->add_option("--repeats", repeats, "cross-validation repeats");
    grid->add_option("--folds", folds, "folds per repeat");
    grid->add_option("--out", opt.out_dir, "output directory");

    CLI::App* predict = app.add_subcommand(
        "predict", "classify a dataset with a saved model/tree");
    add_dataset_flags(predict, opt);
    predict->add_option("--model", model_path, "saved model or tree file")
        ->required();
    predict->add_option("--out", opt.out_dir, "output directory");

    CLI::App* inspect =
        app.add_subcommand("inspect", "summarize a saved model/tree file");
    inspect->add_option("--model", model_path, "saved model or tree file")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (train->parsed()) return run_train(opt);
    if (eval->parsed()) return run_eval_cmd(opt, repeats, folds);
    if (grid->parsed()) return run_grid_cmd(opt, repeats, folds, lambdas);
    if (predict->parsed()) return run_predict(opt, model_path);
    if (inspect->parsed()) return run_inspect(model_path);
    return 2;
}
