#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "core/model.hpp"

namespace caea {

/// Assigns every point to its nearest prototype of the trained model (CIM
/// under the mean node bandwidth, ties to the lower index). The returned
/// cells are indexed by prototype, pairwise disjoint, and cover all point
/// indices; a cell is empty when its prototype is nearest to no point.
/// Throws invalid_state when the model has no nodes.
std::vector<std::vector<std::size_t>> partition_training_data(
    const CaeaModel& model, const std::vector<std::vector<double>>& points);

/// One layer of the hierarchy: a trained model, the partition of this
/// layer's input, and child layers keyed by prototype index.
struct HcaeaNode {
    explicit HcaeaNode(CaeaParams params) : model(params) {}

    CaeaModel model;
    std::vector<std::vector<std::size_t>> subsets;  // local point indices
    std::map<std::size_t, std::unique_ptr<HcaeaNode>> children;
};

/// Divisive hierarchy over CaeaModel. A layer recurses into a prototype's
/// data subset when the layer has at least recurse_min_k prototypes, the
/// subset holds at least lambda points, and the subset is a strict subset of
/// the layer's input; those guards bound the recursion unconditionally.
/// The tree keeps its accumulated training data so that later batches can be
/// replayed through the root model, rebuilding only the subtrees whose data
/// subset actually changed.
class HcaeaTree {
public:
    explicit HcaeaTree(CaeaParams params);

    /// Convenience wrapper: fresh tree trained on one batch.
    static HcaeaTree fit(const std::vector<std::vector<double>>& points,
                         const std::vector<std::optional<int>>& labels,
                         CaeaParams params);

    /// Appends a batch and (re)trains. On the first call this builds the
    /// whole hierarchy; on later calls the new points stream through the
    /// root model and only subtrees with a changed data subset are rebuilt.
    void fit_more(const std::vector<std::vector<double>>& points,
                  const std::vector<std::optional<int>>& labels = {});

    struct Prediction {
        std::optional<int> label;
        std::vector<std::size_t> path;  // prototype index per layer
    };

    /// Walks from the root to a childless prototype, following the nearest
    /// prototype at each layer. Throws invalid_state on an untrained tree or
    /// a root without prototypes.
    Prediction predict(std::span<const double> x) const;

    bool trained() const { return root_ != nullptr; }

    /// Longest root-to-leaf path in layers; 0 for an untrained tree.
    int depth() const;

    /// Total number of childless prototypes across all layers.
    std::size_t leaf_count() const;

    const HcaeaNode& root() const;
    const CaeaParams& params() const { return params_; }
    const std::vector<std::vector<double>>& points() const { return points_; }
    const std::vector<std::optional<int>>& labels() const { return labels_; }

    /// Rebuilds a tree from serialized state (ownership of the node graph
    /// moves in); throws data_error when subsets and models disagree.
    static HcaeaTree restore(CaeaParams params,
                             std::vector<std::vector<double>> points,
                             std::vector<std::optional<int>> labels,
                             std::unique_ptr<HcaeaNode> root);

private:
    std::unique_ptr<HcaeaNode> build_layer(
        const std::vector<std::vector<double>>& points,
        const std::vector<std::optional<int>>& labels) const;

    CaeaParams params_;
    std::vector<std::vector<double>> points_;
    std::vector<std::optional<int>> labels_;
    std::unique_ptr<HcaeaNode> root_;
};

}  // namespace caea
