#include "core/serialize.hpp"

#include <fstream>

#include "core/errors.hpp"

namespace caea {

using nlohmann::json;

namespace {

template <typename Fn>
auto parsing(const char* context, Fn&& fn) {
    try {
        return fn();
    } catch (const json::exception& e) {
        throw data_error(std::string(context) + ": " + e.what());
    }
}

}  // namespace

json params_to_json(const CaeaParams& params) {
    json j;
    j["lambda"] = params.lambda;
    j["age_max"] = params.age_max;
    j["aging_policy"] =
        params.aging_policy == AgingPolicy::algorithm1 ? "algorithm1" : "prose";
    j["recurse_min_k"] = params.recurse_min_k;
    if (params.v_threshold_override) {
        j["v_threshold_override"] = *params.v_threshold_override;
    } else {
        j["v_threshold_override"] = nullptr;
    }
    return j;
}

CaeaParams params_from_json(const json& j) {
    return parsing("params", [&] {
        CaeaParams p;
        p.lambda = j.at("lambda").get<int>();
        p.age_max = j.at("age_max").get<int>();
        const std::string policy = j.at("aging_policy").get<std::string>();
        if (policy == "algorithm1") {
            p.aging_policy = AgingPolicy::algorithm1;
        } else if (policy == "prose") {
            p.aging_policy = AgingPolicy::prose;
        } else {
            throw data_error("params: unknown aging_policy '" + policy + "'");
        }
        p.recurse_min_k = j.at("recurse_min_k").get<int>();
        const auto& vt = j.at("v_threshold_override");
        if (!vt.is_null()) p.v_threshold_override = vt.get<double>();
        return p;
    });
}

json model_to_json(const CaeaModel& model) {
    json j;
    j["format"] = kModelFormat;
    j["version"] = 1;
    j["params"] = params_to_json(model.params());
    j["dim"] = model.dim();
    j["input_count"] = model.input_count();
    if (model.v_threshold()) {
        j["v_threshold"] = *model.v_threshold();
    } else {
        j["v_threshold"] = nullptr;
    }
    json nodes = json::array();
    for (const auto& n : model.nodes()) {
        json node;
        node["weight"] = n.weight;
        node["sigma"] = n.sigma;
        node["win_count"] = n.win_count;
        json hist = json::object();
        for (const auto& [cls, count] : n.label_histogram) {
            hist[std::to_string(cls)] = count;
        }
        node["labels"] = hist;
        nodes.push_back(std::move(node));
    }
    j["nodes"] = std::move(nodes);
    json edges = json::array();
    for (const auto& [key, age] : model.edge_store().edges()) {
        edges.push_back(json::array({key.first, key.second, age}));
    }
    j["edges"] = std::move(edges);
    j["window"] = model.window();
    return j;
}

CaeaModel model_from_json(const json& j) {
    return parsing("model file", [&] {
        if (json_format(j) != kModelFormat) {
            throw data_error("not a model file");
        }
        const CaeaParams params = params_from_json(j.at("params"));
        const int dim = j.at("dim").get<int>();
        const auto input_count = j.at("input_count").get<std::int64_t>();
        std::optional<double> vt;
        if (!j.at("v_threshold").is_null()) {
            vt = j.at("v_threshold").get<double>();
        }
        std::vector<Node> nodes;
        for (const auto& nj : j.at("nodes")) {
            Node n;
            n.weight = nj.at("weight").get<std::vector<double>>();
            n.sigma = nj.at("sigma").get<double>();
            n.win_count = nj.at("win_count").get<std::int64_t>();
            for (const auto& [cls, count] : nj.at("labels").items()) {
                n.label_histogram[std::stoi(cls)] = count.get<std::int64_t>();
            }
            nodes.push_back(std::move(n));
        }
        EdgeStore edges;
        for (const auto& ej : j.at("edges")) {
            edges.insert_raw(ej.at(0).get<std::size_t>(),
                             ej.at(1).get<std::size_t>(), ej.at(2).get<int>());
        }
        auto window = j.at("window").get<std::vector<std::vector<double>>>();
        return CaeaModel::restore(params, dim, input_count, vt,
                                  std::move(nodes), std::move(edges),
                                  std::move(window));
    });
}

namespace {

json node_to_json(const HcaeaNode& node) {
    json j;
    j["model"] = model_to_json(node.model);
    j["subsets"] = node.subsets;
    json children = json::object();
    for (const auto& [proto, child] : node.children) {
        children[std::to_string(proto)] = node_to_json(*child);
    }
    j["children"] = std::move(children);
    return j;
}

std::unique_ptr<HcaeaNode> node_from_json(const json& j,
                                          const CaeaParams& params) {
    auto node = std::make_unique<HcaeaNode>(params);
    node->model = model_from_json(j.at("model"));
    node->subsets = j.at("subsets").get<std::vector<std::vector<std::size_t>>>();
    for (const auto& [key, child] : j.at("children").items()) {
        node->children[static_cast<std::size_t>(std::stoull(key))] =
            node_from_json(child, params);
    }
    return node;
}

}  // namespace

json tree_to_json(const HcaeaTree& tree) {
    json j;
    j["format"] = kTreeFormat;
    j["version"] = 1;
    j["params"] = params_to_json(tree.params());
    j["points"] = tree.points();
    json labels = json::array();
    for (const auto& l : tree.labels()) {
        if (l) labels.push_back(*l);
        else labels.push_back(nullptr);
    }
    j["labels"] = std::move(labels);
    if (tree.trained()) {
        j["root"] = node_to_json(tree.root());
    } else {
        j["root"] = nullptr;
    }
    return j;
}

HcaeaTree tree_from_json(const json& j) {
    return parsing("tree file", [&] {
        if (json_format(j) != kTreeFormat) {
            throw data_error("not a tree file");
        }
        const CaeaParams params = params_from_json(j.at("params"));
        auto points = j.at("points").get<std::vector<std::vector<double>>>();
        std::vector<std::optional<int>> labels;
        for (const auto& l : j.at("labels")) {
            if (l.is_null()) labels.emplace_back();
            else labels.emplace_back(l.get<int>());
        }
        std::unique_ptr<HcaeaNode> root;
        if (!j.at("root").is_null()) root = node_from_json(j.at("root"), params);
        return HcaeaTree::restore(params, std::move(points), std::move(labels),
                                  std::move(root));
    });
}

void save_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write file: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw data_error("failed writing file: " + path);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw data_error(path + ": " + e.what());
    }
}

std::string json_format(const json& j) {
    if (!j.is_object() || !j.contains("format") || !j["format"].is_string()) {
        throw data_error("file has no format marker");
    }
    const std::string fmt = j["format"].get<std::string>();
    if (fmt != kModelFormat && fmt != kTreeFormat) {
        throw data_error("unknown format '" + fmt + "'");
    }
    return fmt;
}

}  // namespace caea
