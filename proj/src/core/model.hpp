#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "core/bandwidth.hpp"

namespace caea {

// Where in a learning step edge ages advance. algorithm1 ages the first
// winner's edges right after winner selection (every case, including new-node
// creation); prose ages them only when the winner actually absorbs the input.
enum class AgingPolicy { algorithm1, prose };

struct CaeaParams {
    int lambda = 20;     // interval for bandwidth adaptation and node cleanup
    int age_max = 10;    // edges older than this are removed
    AgingPolicy aging_policy = AgingPolicy::algorithm1;
    int recurse_min_k = 3;  // hierarchy: minimum node count to grow a layer
    std::optional<double> v_threshold_override;

    /// Throws config_error on out-of-range values. lambda below 4 is refused
    /// unless v_threshold_override is given: the automatic threshold needs at
    /// least two initial nodes.
    void validate() const;
};

/// Number of inputs consumed verbatim as initial nodes: lambda/2 rounded
/// half-up, so always >= 1.
int init_size(const CaeaParams& params);

struct Node {
    std::vector<double> weight;
    double sigma = 0.0;          // kernel bandwidth fixed at creation
    std::int64_t win_count = 1;  // M, number of absorbed inputs
    std::map<int, std::int64_t> label_histogram;
};

/// Symmetric edge set with per-edge ages. Pairs are stored once with the
/// smaller index first; self-loops are rejected.
class EdgeStore {
public:
    using Key = std::pair<std::size_t, std::size_t>;

    bool has_edge(std::size_t i, std::size_t j) const;
    int age(std::size_t i, std::size_t j) const;

    /// Creates the edge or resets an existing one; age becomes 0 either way.
    void connect(std::size_t i, std::size_t j);

    /// Ascending neighbor indices of node i.
    std::vector<std::size_t> neighbors(std::size_t i) const;
    std::size_t degree(std::size_t i) const;
    std::size_t edge_count() const { return ages_.size(); }

    /// Adds 1 to the age of every edge incident to i.
    void age_incident(std::size_t i);

    /// Removes edges incident to i whose age exceeds age_max.
    void prune_incident(std::size_t i, int age_max);

    /// Renumbers endpoints after node deletion; edges whose endpoint maps to
    /// nullopt are dropped.
    void remap(const std::vector<std::optional<std::size_t>>& new_index);

    /// Used by deserialization; throws data_error on self-loops or negative
    /// ages.
    void insert_raw(std::size_t i, std::size_t j, int age);

    const std::map<Key, int>& edges() const { return ages_; }

private:
    static Key key(std::size_t i, std::size_t j);
    std::map<Key, int> ages_;
};

/// Mean over nodes of the minimum pairwise CIM to any other node. Needs at
/// least two nodes; throws invalid_state otherwise.
double compute_vigilance_threshold(
    const std::vector<std::vector<double>>& init_nodes, double sigma);

enum class VigilanceCase { case_i, case_ii, case_iii };

/// Three-way test of the winner similarities against the threshold:
/// case_i when v1 > threshold (input resonates with nothing), case_ii when
/// only the first winner passes, case_iii when both do. Without a second
/// winner the decision falls to v1 alone (case_i or case_ii).
VigilanceCase vigilance_case(double v1, std::optional<double> v2,
                             double v_threshold);

struct WinnerSelection {
    std::size_t k1 = 0;
    double v1 = 0.0;
    std::optional<std::size_t> k2;
    std::optional<double> v2;
    double bandwidth = 0.0;  // mean of node sigmas used for the CIM
};

/// Online topological learner. Consumes one point at a time; the first
/// lambda/2 inputs become nodes directly and fix the vigilance threshold,
/// every later input is routed through winner selection and the vigilance
/// test. Labels are bookkeeping for evaluation only and never influence
/// learning. Training is single-threaded per model; a finished model can be
/// read (predict and accessors) from many threads at once.
class CaeaModel {
public:
    explicit CaeaModel(CaeaParams params);

    /// One full learning step. Throws std::invalid_argument on a dimension
    /// mismatch with earlier inputs.
    void learn(std::span<const double> x, std::optional<int> label = std::nullopt);

    /// Single pass over the stream in the given order. labels may be empty
    /// (all points unlabeled) or parallel to points.
    void fit(const std::vector<std::vector<double>>& points,
             const std::vector<std::optional<int>>& labels = {});

    struct Prediction {
        std::size_t node = 0;
        std::optional<int> label;  // histogram majority, ties to smallest id
        std::size_t cluster = 0;   // connected component of the node
    };

    /// Nearest-node lookup; throws invalid_state on an empty model.
    Prediction predict(std::span<const double> x) const;

    /// First and second winners by CIM under the mean node bandwidth.
    /// Ties resolve to the lower node index.
    WinnerSelection select_winners(std::span<const double> x) const;

    std::size_t nearest_node(std::span<const double> x) const;

    double mean_sigma() const;

    /// Component id per node; ids count up from 0 in order of the smallest
    /// node index in each component.
    std::vector<std::size_t> component_ids() const;
    std::size_t component_count() const;

    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<Node>& nodes() const { return nodes_; }
    const EdgeStore& edge_store() const { return edges_; }
    std::optional<double> v_threshold() const { return v_threshold_; }
    std::int64_t input_count() const { return input_count_; }
    const CaeaParams& params() const { return params_; }
    int dim() const { return dim_; }
    const std::vector<std::vector<double>>& window() const { return window_; }

    /// Rebuilds a model from serialized state; throws data_error when the
    /// parts violate the model invariants.
    static CaeaModel restore(CaeaParams params, int dim,
                             std::int64_t input_count,
                             std::optional<double> v_threshold,
                             std::vector<Node> nodes, EdgeStore edges,
                             std::vector<std::vector<double>> window);

private:
    void check_dimension(std::span<const double> x);
    void push_window(std::span<const double> x);
    double sigma_from_window() const;  // representative with fallback
    void age_and_prune(std::size_t k1);
    void sweep_isolated();

    CaeaParams params_;
    int dim_ = 0;  // 0 until the first input arrives
    std::vector<Node> nodes_;
    EdgeStore edges_;
    std::optional<double> v_threshold_;
    std::vector<std::vector<double>> window_;  // last init_size inputs, oldest first
    std::int64_t input_count_ = 0;
};

}  // namespace caea
