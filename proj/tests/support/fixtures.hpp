#pragma once

#include <optional>
#include <vector>

#include "core/rng.hpp"

namespace caea::testing {

struct BlobData {
    std::vector<std::vector<double>> points;
    std::vector<std::optional<int>> labels;
};

// Two well-separated 2-D Gaussian blobs in interleaved order (blob id is the
// label). Separation is large against the blob spread, so a trained model
// should split them into exactly two components.
inline BlobData make_two_blobs(std::uint64_t seed, std::size_t per_blob = 200,
                               double spread = 0.5) {
    SplitMix64 rng(seed);
    const double centers[2][2] = {{0.0, 0.0}, {10.0, 10.0}};
    BlobData data;
    for (std::size_t i = 0; i < per_blob; ++i) {
        for (int blob = 0; blob < 2; ++blob) {
            data.points.push_back({centers[blob][0] + spread * rng.next_gaussian(),
                                   centers[blob][1] + spread * rng.next_gaussian()});
            data.labels.emplace_back(blob);
        }
    }
    return data;
}

// Blob mixture for randomized stress streams: `blobs` centers on a coarse
// grid, points drawn around them in up to `dim` dimensions.
inline BlobData make_blob_mixture(std::uint64_t seed, std::size_t count,
                                  std::size_t dim, std::size_t blobs) {
    SplitMix64 rng(seed);
    std::vector<std::vector<double>> centers;
    for (std::size_t b = 0; b < blobs; ++b) {
        std::vector<double> c(dim);
        for (auto& v : c) v = (rng.next_double() - 0.5) * 20.0;
        centers.push_back(std::move(c));
    }
    BlobData data;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t b = rng.below(blobs);
        std::vector<double> p(dim);
        for (std::size_t a = 0; a < dim; ++a) {
            p[a] = centers[b][a] + rng.next_gaussian();
        }
        data.points.push_back(std::move(p));
        data.labels.emplace_back(static_cast<int>(b));
    }
    return data;
}

}  // namespace caea::testing
