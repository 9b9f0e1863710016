#include "core/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace caea {

namespace {

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace

BandwidthEstimate estimate_sigma(const std::vector<std::vector<double>>& window) {
    if (window.empty()) {
        throw std::invalid_argument("estimate_sigma: empty window");
    }
    const std::size_t d = window.front().size();
    if (d == 0) {
        throw std::invalid_argument("estimate_sigma: zero-dimensional points");
    }
    for (const auto& p : window) {
        if (p.size() != d) {
            throw std::invalid_argument("estimate_sigma: ragged window");
        }
    }

    const double n = static_cast<double>(window.size());
    const double dd = static_cast<double>(d);
    const double coefficient = std::pow(4.0 / (2.0 + dd), 1.0 / (4.0 + dd));
    const double n_scale = std::pow(n, -1.0 / (4.0 + dd));

    BandwidthEstimate est;
    est.per_attribute.resize(d);
    for (std::size_t a = 0; a < d; ++a) {
        double mean = 0.0;
        for (const auto& p : window) mean += p[a];
        mean /= n;
        double var = 0.0;
        for (const auto& p : window) {
            const double dev = p[a] - mean;
            var += dev * dev;
        }
        var /= n;  // population convention
        est.per_attribute[a] = coefficient * std::sqrt(var) * n_scale;
    }
    est.representative = median_of(est.per_attribute);
    return est;
}

}  // namespace caea
