#include "core/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace caea {

namespace {

void check_pairs(std::span<const int> truth, std::span<const int> predicted) {
    if (truth.size() != predicted.size()) {
        throw std::invalid_argument("label vectors differ in length");
    }
    if (truth.empty()) {
        throw std::invalid_argument("label vectors are empty");
    }
}

// dense contingency table: counts[p][t], remapping arbitrary ids
struct Contingency {
    std::vector<std::vector<std::int64_t>> counts;
    std::vector<std::int64_t> pred_totals;
    std::vector<std::int64_t> truth_totals;
    std::int64_t n = 0;
};

Contingency contingency(std::span<const int> truth,
                        std::span<const int> predicted) {
    std::map<int, std::size_t> pred_ids;
    std::map<int, std::size_t> truth_ids;
    for (int v : predicted) pred_ids.emplace(v, pred_ids.size());
    for (int v : truth) truth_ids.emplace(v, truth_ids.size());
    // re-number by sorted id for a deterministic table layout
    std::size_t i = 0;
    for (auto& [id, slot] : pred_ids) slot = i++;
    i = 0;
    for (auto& [id, slot] : truth_ids) slot = i++;

    Contingency c;
    c.n = static_cast<std::int64_t>(truth.size());
    c.counts.assign(pred_ids.size(),
                    std::vector<std::int64_t>(truth_ids.size(), 0));
    c.pred_totals.assign(pred_ids.size(), 0);
    c.truth_totals.assign(truth_ids.size(), 0);
    for (std::size_t r = 0; r < truth.size(); ++r) {
        const std::size_t p = pred_ids[predicted[r]];
        const std::size_t t = truth_ids[truth[r]];
        ++c.counts[p][t];
        ++c.pred_totals[p];
        ++c.truth_totals[t];
    }
    return c;
}

inline __int128 choose2(std::int64_t v) {
    return static_cast<__int128>(v) * (v - 1) / 2;
}

}  // namespace

double accuracy(std::span<const int> truth, std::span<const int> predicted) {
    check_pairs(truth, predicted);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == predicted[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double nmi(std::span<const int> truth, std::span<const int> predicted) {
    check_pairs(truth, predicted);
    const Contingency c = contingency(truth, predicted);
    if (c.pred_totals.size() == 1 || c.truth_totals.size() == 1) {
        return (c.pred_totals.size() == 1 && c.truth_totals.size() == 1) ? 1.0
                                                                         : 0.0;
    }
    const double n = static_cast<double>(c.n);
    double mutual = 0.0;
    for (std::size_t p = 0; p < c.counts.size(); ++p) {
        for (std::size_t t = 0; t < c.counts[p].size(); ++t) {
            const std::int64_t nij = c.counts[p][t];
            if (nij == 0) continue;
            const double num = n * static_cast<double>(nij);
            const double den = static_cast<double>(c.pred_totals[p]) *
                               static_cast<double>(c.truth_totals[t]);
            mutual += (static_cast<double>(nij) / n) * std::log(num / den);
        }
    }
    double h_pred = 0.0;
    for (std::int64_t a : c.pred_totals) {
        const double q = static_cast<double>(a) / n;
        h_pred -= q * std::log(q);
    }
    double h_truth = 0.0;
    for (std::int64_t b : c.truth_totals) {
        const double q = static_cast<double>(b) / n;
        h_truth -= q * std::log(q);
    }
    const double value = mutual / std::sqrt(h_pred * h_truth);
    return std::clamp(value, 0.0, 1.0);  // absorb last-ulp drift
}

double ari(std::span<const int> truth, std::span<const int> predicted) {
    check_pairs(truth, predicted);
    const Contingency c = contingency(truth, predicted);
    __int128 index = 0;
    for (const auto& row : c.counts) {
        for (std::int64_t nij : row) index += choose2(nij);
    }
    __int128 p_pairs = 0;
    for (std::int64_t a : c.pred_totals) p_pairs += choose2(a);
    __int128 t_pairs = 0;
    for (std::int64_t b : c.truth_totals) t_pairs += choose2(b);
    const __int128 total = choose2(c.n);

    // (index - pq/total) / ((p+q)/2 - pq/total), scaled by 2*total to stay
    // in integers until one final division
    const __int128 numerator = 2 * (index * total - p_pairs * t_pairs);
    const __int128 denominator =
        (p_pairs + t_pairs) * total - 2 * p_pairs * t_pairs;
    if (denominator == 0) return 1.0;
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

double macro_f1(std::span<const int> truth, std::span<const int> predicted) {
    check_pairs(truth, predicted);
    std::map<int, std::array<std::int64_t, 3>> stats;  // tp, fp, fn per class
    for (int v : truth) stats.emplace(v, std::array<std::int64_t, 3>{0, 0, 0});
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == predicted[i]) {
            ++stats[truth[i]][0];
        } else {
            ++stats[truth[i]][2];  // miss for the true class
            auto it = stats.find(predicted[i]);
            if (it != stats.end()) ++it->second[1];  // stray hit elsewhere
        }
    }
    double sum = 0.0;
    for (const auto& [cls, s] : stats) {
        const auto [tp, fp, fn] = s;
        const double precision =
            (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp)
                          : 0.0;
        const double recall =
            static_cast<double>(tp) / static_cast<double>(tp + fn);
        sum += (precision + recall) > 0.0
                   ? 2.0 * precision * recall / (precision + recall)
                   : 0.0;
    }
    return sum / static_cast<double>(stats.size());
}

}  // namespace caea
