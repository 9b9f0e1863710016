#include "core/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "core/errors.hpp"
#include "core/similarity.hpp"

namespace caea {

void CaeaParams::validate() const {
    if (lambda < 2) {
        throw config_error("lambda must be >= 2, got " + std::to_string(lambda));
    }
    if (lambda < 4 && !v_threshold_override) {
        throw config_error(
            "lambda < 4 leaves fewer than two initial nodes, so the vigilance "
            "threshold cannot be estimated; pass an explicit override");
    }
    if (age_max < 1) {
        throw config_error("age_max must be >= 1, got " + std::to_string(age_max));
    }
    if (recurse_min_k < 2) {
        throw config_error("recurse_min_k must be >= 2, got " +
                           std::to_string(recurse_min_k));
    }
    if (v_threshold_override) {
        const double v = *v_threshold_override;
        if (!std::isfinite(v) || v <= 0.0 || v >= 1.0) {
            throw config_error("vigilance override must lie in (0, 1)");
        }
    }
}

int init_size(const CaeaParams& params) {
    return (params.lambda + 1) / 2;  // round half-up of lambda/2
}

EdgeStore::Key EdgeStore::key(std::size_t i, std::size_t j) {
    if (i == j) throw internal_error("EdgeStore: self-loop");
    return i < j ? Key{i, j} : Key{j, i};
}

bool EdgeStore::has_edge(std::size_t i, std::size_t j) const {
    return ages_.count(key(i, j)) != 0;
}

int EdgeStore::age(std::size_t i, std::size_t j) const {
    auto it = ages_.find(key(i, j));
    if (it == ages_.end()) throw invalid_state("EdgeStore: no such edge");
    return it->second;
}

void EdgeStore::connect(std::size_t i, std::size_t j) {
    ages_[key(i, j)] = 0;
}

std::vector<std::size_t> EdgeStore::neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (const auto& [k, age] : ages_) {
        if (k.first == i) out.push_back(k.second);
        else if (k.second == i) out.push_back(k.first);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t EdgeStore::degree(std::size_t i) const {
    std::size_t n = 0;
    for (const auto& [k, age] : ages_) {
        if (k.first == i || k.second == i) ++n;
    }
    return n;
}

void EdgeStore::age_incident(std::size_t i) {
    for (auto& [k, age] : ages_) {
        if (k.first == i || k.second == i) ++age;
    }
}

void EdgeStore::prune_incident(std::size_t i, int age_max) {
    for (auto it = ages_.begin(); it != ages_.end();) {
        const bool incident = it->first.first == i || it->first.second == i;
        if (incident && it->second > age_max) it = ages_.erase(it);
        else ++it;
    }
}

void EdgeStore::remap(const std::vector<std::optional<std::size_t>>& new_index) {
    std::map<Key, int> remapped;
    for (const auto& [k, age] : ages_) {
        const auto& a = new_index.at(k.first);
        const auto& b = new_index.at(k.second);
        if (a && b) remapped[key(*a, *b)] = age;
    }
    ages_ = std::move(remapped);
}

void EdgeStore::insert_raw(std::size_t i, std::size_t j, int age) {
    if (i == j) throw data_error("edge list contains a self-loop");
    if (age < 0) throw data_error("edge age is negative");
    ages_[key(i, j)] = age;
}

double compute_vigilance_threshold(
    const std::vector<std::vector<double>>& init_nodes, double sigma) {
    const std::size_t m = init_nodes.size();
    if (m < 2) {
        throw invalid_state(
            "vigilance threshold needs at least two initial nodes");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double min_cim = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            min_cim = std::min(min_cim, cim(init_nodes[i], init_nodes[j], sigma));
        }
        sum += min_cim;
    }
    return sum / static_cast<double>(m);
}

VigilanceCase vigilance_case(double v1, std::optional<double> v2,
                             double v_threshold) {
    if (v1 > v_threshold) return VigilanceCase::case_i;
    if (!v2 || *v2 > v_threshold) return VigilanceCase::case_ii;
    return VigilanceCase::case_iii;
}

CaeaModel::CaeaModel(CaeaParams params) : params_(params) {
    params_.validate();
}

void CaeaModel::check_dimension(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("learn: empty input vector");
    if (dim_ == 0) {
        dim_ = static_cast<int>(x.size());
    } else if (static_cast<int>(x.size()) != dim_) {
        throw std::invalid_argument("learn: input dimension " +
                                    std::to_string(x.size()) +
                                    " does not match model dimension " +
                                    std::to_string(dim_));
    }
}

void CaeaModel::push_window(std::span<const double> x) {
    window_.emplace_back(x.begin(), x.end());
    const auto cap = static_cast<std::size_t>(init_size(params_));
    while (window_.size() > cap) window_.erase(window_.begin());
}

double CaeaModel::sigma_from_window() const {
    const double rep = estimate_sigma(window_).representative;
    return rep > 0.0 ? rep : kSigmaFallback;
}

void CaeaModel::learn(std::span<const double> x, std::optional<int> label) {
    check_dimension(x);
    ++input_count_;
    const auto isz = static_cast<std::size_t>(init_size(params_));

    if (nodes_.size() < isz) {
        // Initialization (and refill after deletions): the input itself
        // becomes a node, with the bandwidth estimated over the window
        // including it.
        push_window(x);
        Node node;
        node.weight.assign(x.begin(), x.end());
        node.sigma = sigma_from_window();
        node.win_count = 1;
        if (label) node.label_histogram[*label] = 1;
        nodes_.push_back(std::move(node));
        if (!v_threshold_ && nodes_.size() == isz) {
            // Written exactly once per model; deletions below isz later on
            // refill nodes but never touch the threshold again.
            if (params_.v_threshold_override) {
                v_threshold_ = *params_.v_threshold_override;
            } else {
                std::vector<std::vector<double>> weights;
                weights.reserve(nodes_.size());
                for (const auto& n : nodes_) weights.push_back(n.weight);
                v_threshold_ =
                    compute_vigilance_threshold(weights, nodes_.back().sigma);
            }
        }
    } else {
        const WinnerSelection w = select_winners(x);
        if (params_.aging_policy == AgingPolicy::algorithm1) {
            age_and_prune(w.k1);
        }
        const VigilanceCase vcase = vigilance_case(w.v1, w.v2, *v_threshold_);
        if (vcase == VigilanceCase::case_i) {
            // New node; its bandwidth comes from the inputs preceding x
            // (the window has not absorbed x yet).
            Node node;
            node.weight.assign(x.begin(), x.end());
            node.sigma = sigma_from_window();
            node.win_count = 1;
            if (label) node.label_histogram[*label] = 1;
            nodes_.push_back(std::move(node));
        } else {
            if (params_.aging_policy == AgingPolicy::prose) {
                age_and_prune(w.k1);
            }
            Node& winner = nodes_[w.k1];
            const double m = static_cast<double>(winner.win_count);
            for (std::size_t i = 0; i < x.size(); ++i) {
                winner.weight[i] += (x[i] - winner.weight[i]) / m;
            }
            winner.win_count += 1;
            if (vcase == VigilanceCase::case_iii) {
                for (std::size_t j : edges_.neighbors(w.k1)) {
                    Node& nb = nodes_[j];
                    const double mj = static_cast<double>(nb.win_count);
                    for (std::size_t i = 0; i < x.size(); ++i) {
                        nb.weight[i] += (x[i] - nb.weight[i]) / (10.0 * mj);
                    }
                }
                edges_.connect(w.k1, *w.k2);
            }
            if (label) winner.label_histogram[*label] += 1;
        }
        push_window(x);
    }

    if (input_count_ % params_.lambda == 0) sweep_isolated();
}

void CaeaModel::fit(const std::vector<std::vector<double>>& points,
                    const std::vector<std::optional<int>>& labels) {
    if (!labels.empty() && labels.size() != points.size()) {
        throw std::invalid_argument("fit: labels do not match points");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        learn(points[i], labels.empty() ? std::nullopt : labels[i]);
    }
}

WinnerSelection CaeaModel::select_winners(std::span<const double> x) const {
    if (nodes_.empty()) throw invalid_state("select_winners: no nodes");
    WinnerSelection w;
    w.bandwidth = mean_sigma();
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    std::size_t second_idx = 0;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const double v = cim(x, nodes_[k].weight, w.bandwidth);
        if (v < best) {
            second = best;
            second_idx = best_idx;
            best = v;
            best_idx = k;
        } else if (v < second) {
            second = v;
            second_idx = k;
        }
    }
    w.k1 = best_idx;
    w.v1 = best;
    if (nodes_.size() >= 2) {
        w.k2 = second_idx;
        w.v2 = second;
    }
    return w;
}

std::size_t CaeaModel::nearest_node(std::span<const double> x) const {
    return select_winners(x).k1;
}

double CaeaModel::mean_sigma() const {
    if (nodes_.empty()) throw invalid_state("mean_sigma: no nodes");
    double sum = 0.0;
    for (const auto& n : nodes_) sum += n.sigma;
    return sum / static_cast<double>(nodes_.size());
}

CaeaModel::Prediction CaeaModel::predict(std::span<const double> x) const {
    if (nodes_.empty()) throw invalid_state("predict: model has no nodes");
    Prediction p;
    p.node = nearest_node(x);
    const auto& hist = nodes_[p.node].label_histogram;
    std::int64_t best_count = 0;
    for (const auto& [cls, count] : hist) {  // ascending ids: ties to smallest
        if (count > best_count) {
            best_count = count;
            p.label = cls;
        }
    }
    p.cluster = component_ids()[p.node];
    return p;
}

std::vector<std::size_t> CaeaModel::component_ids() const {
    const std::size_t k = nodes_.size();
    std::vector<std::size_t> ids(k, SIZE_MAX);
    std::size_t next_id = 0;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < k; ++start) {
        if (ids[start] != SIZE_MAX) continue;
        const std::size_t id = next_id++;
        stack.push_back(start);
        ids[start] = id;
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            for (std::size_t nb : edges_.neighbors(cur)) {
                if (ids[nb] == SIZE_MAX) {
                    ids[nb] = id;
                    stack.push_back(nb);
                }
            }
        }
    }
    return ids;
}

std::size_t CaeaModel::component_count() const {
    const auto ids = component_ids();
    std::size_t max_id = 0;
    for (std::size_t v : ids) max_id = std::max(max_id, v + 1);
    return ids.empty() ? 0 : max_id;
}

void CaeaModel::age_and_prune(std::size_t k1) {
    edges_.age_incident(k1);
    edges_.prune_incident(k1, params_.age_max);
}

void CaeaModel::sweep_isolated() {
    bool any_isolated = false;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        if (edges_.degree(k) == 0) {
            any_isolated = true;
            break;
        }
    }
    if (!any_isolated) return;
    std::vector<std::optional<std::size_t>> new_index(nodes_.size());
    std::vector<Node> kept;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        if (edges_.degree(k) > 0) {
            new_index[k] = kept.size();
            kept.push_back(std::move(nodes_[k]));
        }
    }
    nodes_ = std::move(kept);
    edges_.remap(new_index);
}

CaeaModel CaeaModel::restore(CaeaParams params, int dim,
                             std::int64_t input_count,
                             std::optional<double> v_threshold,
                             std::vector<Node> nodes, EdgeStore edges,
                             std::vector<std::vector<double>> window) {
    CaeaModel m(params);
    if (dim < 0 || input_count < 0) {
        throw data_error("model state: negative dimension or input count");
    }
    for (const auto& n : nodes) {
        if (static_cast<int>(n.weight.size()) != dim) {
            throw data_error("model state: node dimension mismatch");
        }
        if (n.sigma <= 0.0) throw data_error("model state: sigma must be > 0");
        if (n.win_count < 1) throw data_error("model state: win_count < 1");
    }
    for (const auto& [k, age] : edges.edges()) {
        if (k.second >= nodes.size()) {
            throw data_error("model state: edge endpoint out of range");
        }
    }
    for (const auto& p : window) {
        if (static_cast<int>(p.size()) != dim) {
            throw data_error("model state: window dimension mismatch");
        }
    }
    if (window.size() > static_cast<std::size_t>(init_size(params))) {
        throw data_error("model state: window exceeds its capacity");
    }
    if (v_threshold && !(*v_threshold >= 0.0 && *v_threshold < 1.0)) {
        throw data_error("model state: vigilance threshold out of range");
    }
    m.dim_ = dim;
    m.input_count_ = input_count;
    m.v_threshold_ = v_threshold;
    m.nodes_ = std::move(nodes);
    m.edges_ = std::move(edges);
    m.window_ = std::move(window);
    return m;
}

}  // namespace caea
