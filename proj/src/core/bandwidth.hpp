#pragma once

#include <vector>

namespace caea {

// Substituted when a window has zero variance in every attribute and the
// estimate degenerates to 0 (the CIM needs sigma > 0).
inline constexpr double kSigmaFallback = 1e-6;

struct BandwidthEstimate {
    std::vector<double> per_attribute;  // one entry per dimension
    double representative = 0.0;        // median of per_attribute
};

/// Rule-of-thumb kernel bandwidth over a window of N points of dimension d:
/// per attribute, (4/(2+d))^(1/(4+d)) * stddev * N^(-1/(4+d)) with the
/// population standard deviation (divide by N). The representative value is
/// the median across attributes (even length: mean of the two middle values).
/// The estimate is scale-equivariant and translation-invariant; it is zero
/// when every attribute is constant (callers substitute kSigmaFallback).
/// Throws std::invalid_argument on an empty window or ragged dimensions.
BandwidthEstimate estimate_sigma(const std::vector<std::vector<double>>& window);

}  // namespace caea
