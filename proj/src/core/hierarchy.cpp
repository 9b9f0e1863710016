#include "core/hierarchy.hpp"

#include <algorithm>
#include <stdexcept>

#include "core/errors.hpp"

namespace caea {

std::vector<std::vector<std::size_t>> partition_training_data(
    const CaeaModel& model, const std::vector<std::vector<double>>& points) {
    if (model.node_count() == 0) {
        throw invalid_state("partition_training_data: model has no nodes");
    }
    std::vector<std::vector<std::size_t>> cells(model.node_count());
    for (std::size_t i = 0; i < points.size(); ++i) {
        cells[model.nearest_node(points[i])].push_back(i);
    }
    return cells;
}

HcaeaTree::HcaeaTree(CaeaParams params) : params_(params) {
    params_.validate();
}

HcaeaTree HcaeaTree::fit(const std::vector<std::vector<double>>& points,
                         const std::vector<std::optional<int>>& labels,
                         CaeaParams params) {
    HcaeaTree tree(params);
    tree.fit_more(points, labels);
    return tree;
}

namespace {

// Recursion guards for one prototype's cell: enough points for a child to
// finish its own initialization, and strictly fewer than the parent's input.
bool should_recurse_into(std::size_t cell_size, std::size_t parent_size,
                         const CaeaParams& params) {
    return cell_size >= static_cast<std::size_t>(params.lambda) &&
           cell_size < parent_size;
}

template <typename T>
std::vector<T> gather(const std::vector<T>& values,
                      const std::vector<std::size_t>& indices) {
    std::vector<T> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(values[i]);
    return out;
}

}  // namespace

std::unique_ptr<HcaeaNode> HcaeaTree::build_layer(
    const std::vector<std::vector<double>>& points,
    const std::vector<std::optional<int>>& labels) const {
    auto node = std::make_unique<HcaeaNode>(params_);
    node->model.fit(points, labels);
    const std::size_t k = node->model.node_count();
    if (k == 0) return node;

    node->subsets = partition_training_data(node->model, points);
    if (k < static_cast<std::size_t>(params_.recurse_min_k)) return node;

    for (std::size_t proto = 0; proto < k; ++proto) {
        const auto& cell = node->subsets[proto];
        if (!should_recurse_into(cell.size(), points.size(), params_)) continue;
        auto child = build_layer(gather(points, cell),
                                 labels.empty() ? labels : gather(labels, cell));
        // a child that lost every node to cleanup cannot classify; keep the
        // prototype as a leaf instead
        if (child->model.node_count() > 0) {
            node->children[proto] = std::move(child);
        }
    }
    return node;
}

void HcaeaTree::fit_more(const std::vector<std::vector<double>>& points,
                         const std::vector<std::optional<int>>& labels) {
    if (!labels.empty() && labels.size() != points.size()) {
        throw std::invalid_argument("fit_more: labels do not match points");
    }
    if (points.empty()) {
        throw std::invalid_argument("fit_more: empty batch");
    }
    const std::size_t old_size = points_.size();
    points_.insert(points_.end(), points.begin(), points.end());
    if (labels.empty()) {
        labels_.resize(points_.size());
    } else {
        labels_.resize(old_size);
        labels_.insert(labels_.end(), labels.begin(), labels.end());
    }

    if (!root_) {
        root_ = build_layer(points_, labels_);
        return;
    }

    // Continual extension: stream the new points through the existing root
    // model, then rebuild only the subtrees whose data cell changed.
    for (std::size_t i = old_size; i < points_.size(); ++i) {
        root_->model.learn(points_[i], labels_[i]);
    }
    std::map<std::vector<std::size_t>, std::unique_ptr<HcaeaNode>> reusable;
    for (auto& [proto, child] : root_->children) {
        reusable[root_->subsets[proto]] = std::move(child);
    }
    root_->children.clear();
    const std::size_t k = root_->model.node_count();
    root_->subsets = k == 0 ? std::vector<std::vector<std::size_t>>{}
                            : partition_training_data(root_->model, points_);
    if (k < static_cast<std::size_t>(params_.recurse_min_k)) return;

    for (std::size_t proto = 0; proto < k; ++proto) {
        const auto& cell = root_->subsets[proto];
        if (!should_recurse_into(cell.size(), points_.size(), params_)) continue;
        auto hit = reusable.find(cell);
        if (hit != reusable.end()) {
            root_->children[proto] = std::move(hit->second);
            reusable.erase(hit);
        } else {
            auto child = build_layer(gather(points_, cell), gather(labels_, cell));
            if (child->model.node_count() > 0) {
                root_->children[proto] = std::move(child);
            }
        }
    }
}

HcaeaTree::Prediction HcaeaTree::predict(std::span<const double> x) const {
    if (!root_) throw invalid_state("predict: tree is not trained");
    Prediction out;
    const HcaeaNode* cur = root_.get();
    while (true) {
        const CaeaModel::Prediction p = cur->model.predict(x);
        out.path.push_back(p.node);
        auto it = cur->children.find(p.node);
        if (it == cur->children.end()) {
            out.label = p.label;
            return out;
        }
        cur = it->second.get();
    }
}

namespace {

int depth_of(const HcaeaNode& node) {
    int deepest = 0;
    for (const auto& [proto, child] : node.children) {
        deepest = std::max(deepest, depth_of(*child));
    }
    return 1 + deepest;
}

std::size_t leaves_of(const HcaeaNode& node) {
    std::size_t count = node.model.node_count() - node.children.size();
    for (const auto& [proto, child] : node.children) {
        count += leaves_of(*child);
    }
    return count;
}

}  // namespace

int HcaeaTree::depth() const { return root_ ? depth_of(*root_) : 0; }

std::size_t HcaeaTree::leaf_count() const {
    return root_ ? leaves_of(*root_) : 0;
}

const HcaeaNode& HcaeaTree::root() const {
    if (!root_) throw invalid_state("root: tree is not trained");
    return *root_;
}

namespace {

void validate_node(const HcaeaNode& node, std::size_t input_size) {
    const std::size_t k = node.model.node_count();
    if (k == 0) {
        if (!node.subsets.empty() || !node.children.empty()) {
            throw data_error("tree state: empty model with subsets/children");
        }
        return;
    }
    if (node.subsets.size() != k) {
        throw data_error("tree state: subsets do not match prototype count");
    }
    std::vector<bool> seen(input_size, false);
    for (const auto& cell : node.subsets) {
        for (std::size_t i : cell) {
            if (i >= input_size || seen[i]) {
                throw data_error("tree state: subsets are not a partition");
            }
            seen[i] = true;
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw data_error("tree state: subsets are not a partition");
    }
    for (const auto& [proto, child] : node.children) {
        if (proto >= k) throw data_error("tree state: child key out of range");
        if (child->model.node_count() == 0) {
            throw data_error("tree state: child layer has no prototypes");
        }
        validate_node(*child, node.subsets[proto].size());
    }
}

}  // namespace

HcaeaTree HcaeaTree::restore(CaeaParams params,
                             std::vector<std::vector<double>> points,
                             std::vector<std::optional<int>> labels,
                             std::unique_ptr<HcaeaNode> root) {
    HcaeaTree tree(params);
    if (labels.size() != points.size()) {
        throw data_error("tree state: labels do not match points");
    }
    if (root) validate_node(*root, points.size());
    tree.points_ = std::move(points);
    tree.labels_ = std::move(labels);
    tree.root_ = std::move(root);
    return tree;
}

}  // namespace caea
