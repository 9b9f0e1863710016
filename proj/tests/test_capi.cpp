#include <doctest.h>

#include <caea/caea.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

namespace {

std::string data_path(const std::string& name) {
    return std::string(CAEA_DATA_DIR) + "/" + name;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

caea_params default_params(int lambda) {
    caea_params p;
    caea_params_init(&p);
    p.lambda = lambda;
    return p;
}

}  // namespace

TEST_CASE("version and error text are always available") {
    CHECK(std::string(caea_version()).size() >= 1);
    CHECK(caea_last_error() != nullptr);
}

TEST_CASE("null arguments are rejected without crashing") {
    CHECK(caea_dataset_load_csv(nullptr, 0, -1, nullptr) ==
          CAEA_STATUS_INVALID_ARGUMENT);
    CHECK(caea_model_create(nullptr, nullptr) == CAEA_STATUS_INVALID_ARGUMENT);
    CHECK(std::string(caea_last_error()).size() >= 1);
    caea_dataset_destroy(nullptr);  // destroy tolerates NULL
    caea_model_destroy(nullptr);
    caea_tree_destroy(nullptr);
}

TEST_CASE("config errors carry the dedicated status") {
    caea_params p = default_params(3);
    caea_model* model = nullptr;
    CHECK(caea_model_create(&p, &model) == CAEA_STATUS_CONFIG_ERROR);
    p.v_threshold_override = 0.4;
    REQUIRE(caea_model_create(&p, &model) == CAEA_STATUS_OK);
    caea_model_destroy(model);
}

TEST_CASE("dataset loading and ordering") {
    caea_dataset* ds = nullptr;
    REQUIRE(caea_dataset_load_csv(data_path("iris.csv").c_str(), 0, -1, &ds) ==
            CAEA_STATUS_OK);
    CHECK(caea_dataset_size(ds) == 150);
    CHECK(caea_dataset_dim(ds) == 4);
    CHECK(caea_dataset_num_classes(ds) == 3);

    const char* name = nullptr;
    REQUIRE(caea_dataset_class_name(ds, 0, &name) == CAEA_STATUS_OK);
    CHECK(std::string(name) == "setosa");
    CHECK(caea_dataset_class_name(ds, 5, &name) ==
          CAEA_STATUS_INVALID_ARGUMENT);

    std::vector<double> x(4);
    int32_t label = -5;
    REQUIRE(caea_dataset_point(ds, 0, x.data(), &label) == CAEA_STATUS_OK);
    CHECK(label == 0);
    CHECK(x[0] == 5.1);
    CHECK(caea_dataset_point(ds, 150, x.data(), &label) ==
          CAEA_STATUS_INVALID_ARGUMENT);

    std::vector<int64_t> order(150);
    REQUIRE(caea_dataset_order(ds, CAEA_ENV_NONSTATIONARY, 3, order.data()) ==
            CAEA_STATUS_OK);
    std::set<int64_t> seen(order.begin(), order.end());
    CHECK(seen.size() == 150);
    // class blocks ascend in the nonstationary order
    int32_t last_class = 0;
    for (int64_t i : order) {
        int32_t cls = 0;
        caea_dataset_point(ds, i, x.data(), &cls);
        CHECK(cls >= last_class);
        last_class = cls;
    }

    caea_dataset_destroy(ds);

    caea_dataset* missing = nullptr;
    CHECK(caea_dataset_load_csv("/nonexistent.csv", 0, -1, &missing) ==
          CAEA_STATUS_DATA_ERROR);
}

TEST_CASE("model lifecycle: learn, predict, save, reload") {
    caea_params p = default_params(6);
    caea_model* model = nullptr;
    REQUIRE(caea_model_create(&p, &model) == CAEA_STATUS_OK);

    // predict before any input is an invalid state
    const double probe[2] = {0.0, 0.0};
    CHECK(caea_model_predict(model, probe, 2, nullptr, nullptr, nullptr) ==
          CAEA_STATUS_INVALID_STATE);
    double vt = 0.0;
    CHECK(caea_model_vigilance_threshold(model, &vt) ==
          CAEA_STATUS_INVALID_STATE);

    // two tight clusters around (0,0) and (8,8)
    for (int i = 0; i < 40; ++i) {
        const double a = 0.05 * (i % 5);
        const double lo[2] = {a, a};
        const double hi[2] = {8.0 + a, 8.0 - a};
        REQUIRE(caea_model_learn(model, lo, 2, 0) == CAEA_STATUS_OK);
        REQUIRE(caea_model_learn(model, hi, 2, 1) == CAEA_STATUS_OK);
    }
    CHECK(caea_model_input_count(model) == 80);
    CHECK(caea_model_node_count(model) >= 2);
    CHECK(caea_model_vigilance_threshold(model, &vt) == CAEA_STATUS_OK);
    CHECK(vt > 0.0);
    CHECK(vt < 1.0);

    // dimension mismatch
    CHECK(caea_model_learn(model, probe, 1, 0) == CAEA_STATUS_INVALID_ARGUMENT);

    int64_t node = -1;
    int32_t label = CAEA_LABEL_NONE;
    int64_t cluster = -1;
    REQUIRE(caea_model_predict(model, probe, 2, &node, &label, &cluster) ==
            CAEA_STATUS_OK);
    CHECK(label == 0);
    const double far_probe[2] = {8.0, 8.0};
    int32_t far_label = CAEA_LABEL_NONE;
    int64_t far_cluster = -1;
    REQUIRE(caea_model_predict(model, far_probe, 2, nullptr, &far_label,
                               &far_cluster) == CAEA_STATUS_OK);
    CHECK(far_label == 1);
    CHECK(far_cluster != cluster);

    const auto path = temp_path("capi_model.json");
    REQUIRE(caea_model_save(model, path.string().c_str()) == CAEA_STATUS_OK);
    caea_model* reloaded = nullptr;
    REQUIRE(caea_model_load(path.string().c_str(), &reloaded) ==
            CAEA_STATUS_OK);
    CHECK(caea_model_node_count(reloaded) == caea_model_node_count(model));

    char* json_a = nullptr;
    char* json_b = nullptr;
    REQUIRE(caea_model_to_json(model, &json_a) == CAEA_STATUS_OK);
    REQUIRE(caea_model_to_json(reloaded, &json_b) == CAEA_STATUS_OK);
    CHECK(std::string(json_a) == std::string(json_b));
    caea_string_free(json_a);
    caea_string_free(json_b);

    int32_t kind = -1;
    REQUIRE(caea_file_kind(path.string().c_str(), &kind) == CAEA_STATUS_OK);
    CHECK(kind == CAEA_FILE_MODEL);

    caea_model_destroy(model);
    caea_model_destroy(reloaded);
    std::filesystem::remove(path);
}

namespace {

// simple xorshift-free generator for fixture jitter (keeps this file free of
// internal headers; the C surface is all that is linked)
struct MixRng {
    uint64_t state;
    double next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
    }
};

}  // namespace

TEST_CASE("tree lifecycle over the C surface") {
    caea_params p = default_params(16);
    caea_tree* tree = nullptr;
    REQUIRE(caea_tree_create(&p, &tree) == CAEA_STATUS_OK);

    // interleaved two-blob batch, row-major
    MixRng rng{0x7EE};
    std::vector<double> points;
    std::vector<int32_t> labels;
    for (int i = 0; i < 150; ++i) {
        points.push_back(rng.next() * 2.0);
        points.push_back(rng.next() * 2.0);
        labels.push_back(0);
        points.push_back(9.0 + rng.next() * 2.0);
        points.push_back(9.0 + rng.next() * 2.0);
        labels.push_back(1);
    }
    const int64_t n = static_cast<int64_t>(labels.size());
    REQUIRE(caea_tree_fit(tree, points.data(), labels.data(), n, 2) ==
            CAEA_STATUS_OK);
    CHECK(caea_tree_root_node_count(tree) >= 2);
    CHECK(caea_tree_depth(tree) >= 1);
    CHECK(caea_tree_leaf_count(tree) >= 1);

    const double probe[2] = {9.0, 9.0};
    int32_t label = CAEA_LABEL_NONE;
    std::vector<int64_t> path(16, -1);
    int64_t path_len = 0;
    REQUIRE(caea_tree_predict(tree, probe, 2, &label, path.data(),
                              static_cast<int64_t>(path.size()),
                              &path_len) == CAEA_STATUS_OK);
    CHECK(label == 1);
    CHECK(path_len >= 1);
    CHECK(path[0] >= 0);

    const auto file = temp_path("capi_tree.json");
    REQUIRE(caea_tree_save(tree, file.string().c_str()) == CAEA_STATUS_OK);
    int32_t kind = -1;
    REQUIRE(caea_file_kind(file.string().c_str(), &kind) == CAEA_STATUS_OK);
    CHECK(kind == CAEA_FILE_TREE);

    caea_tree* reloaded = nullptr;
    REQUIRE(caea_tree_load(file.string().c_str(), &reloaded) == CAEA_STATUS_OK);
    CHECK(caea_tree_leaf_count(reloaded) == caea_tree_leaf_count(tree));
    int32_t reloaded_label = CAEA_LABEL_NONE;
    REQUIRE(caea_tree_predict(reloaded, probe, 2, &reloaded_label, nullptr, 0,
                              nullptr) == CAEA_STATUS_OK);
    CHECK(reloaded_label == label);

    // continual extension through the same entry point
    std::vector<double> more = {0.2, 0.2, 0.25, 0.2, 0.3, 0.25};
    std::vector<int32_t> more_labels = {0, 0, 0};
    REQUIRE(caea_tree_fit(reloaded, more.data(), more_labels.data(), 3, 2) ==
            CAEA_STATUS_OK);

    caea_tree_destroy(tree);
    caea_tree_destroy(reloaded);
    std::filesystem::remove(file);
}

TEST_CASE("metrics over the C surface") {
    const std::vector<int32_t> truth = {0, 0, 1, 1};
    const std::vector<int32_t> same = {0, 0, 1, 1};
    const std::vector<int32_t> crossed = {0, 1, 0, 1};
    double value = -1.0;
    REQUIRE(caea_metric_accuracy(truth.data(), same.data(), 4, &value) ==
            CAEA_STATUS_OK);
    CHECK(value == 1.0);
    REQUIRE(caea_metric_nmi(truth.data(), same.data(), 4, &value) ==
            CAEA_STATUS_OK);
    CHECK(value == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(caea_metric_ari(truth.data(), crossed.data(), 4, &value) ==
            CAEA_STATUS_OK);
    CHECK(value == -0.5);
    REQUIRE(caea_metric_macro_f1(truth.data(), same.data(), 4, &value) ==
            CAEA_STATUS_OK);
    CHECK(value == 1.0);
    CHECK(caea_metric_accuracy(truth.data(), same.data(), 0, &value) ==
          CAEA_STATUS_INVALID_ARGUMENT);
}

TEST_CASE("eval harness over the C surface") {
    caea_eval_config config;
    caea_eval_config_init(&config);
    const std::string iris = data_path("iris.csv");
    config.dataset_path = iris.c_str();
    config.params.lambda = 12;
    config.repeats = 1;
    config.folds = 5;
    config.seed = 11;

    const auto out_dir = temp_path("capi_eval_out");
    std::filesystem::remove_all(out_dir);
    caea_eval_summary summary;
    REQUIRE(caea_run_eval(&config, out_dir.string().c_str(), &summary) ==
            CAEA_STATUS_OK);
    CHECK(summary.evaluated_folds == 5);
    CHECK(summary.failed_folds == 0);
    CHECK(summary.accuracy_mean > 0.5);
    CHECK(std::filesystem::exists(out_dir / "folds.csv"));
    CHECK(std::filesystem::exists(out_dir / "summary.csv"));
    CHECK(std::filesystem::exists(out_dir / "report.json"));
    std::filesystem::remove_all(out_dir);

    const auto grid_dir = temp_path("capi_grid_out");
    std::filesystem::remove_all(grid_dir);
    const int32_t lambdas[2] = {10, 14};
    int32_t best = 0;
    REQUIRE(caea_run_grid(&config, lambdas, 2, grid_dir.string().c_str(),
                          &best) == CAEA_STATUS_OK);
    CHECK((best == 10 || best == 14));
    CHECK(std::filesystem::exists(grid_dir / "grid_nmi.csv"));
    CHECK(std::filesystem::exists(grid_dir / "grid_summary.csv"));
    std::filesystem::remove_all(grid_dir);
}
