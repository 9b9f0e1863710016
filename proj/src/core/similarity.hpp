#pragma once

#include <span>

namespace caea {

/// Gaussian kernel exp(-(a-b)^2 / (2 sigma^2)) without the normalization
/// coefficient, so the value lies in (0, 1] and equals 1 iff a == b.
/// Throws std::invalid_argument for non-finite inputs or sigma <= 0.
double gaussian_kernel(double a, double b, double sigma);

/// Correntropy estimate between two vectors of equal dimension:
/// the mean of the per-coordinate Gaussian kernel values. Result in (0, 1].
double correntropy(std::span<const double> x, std::span<const double> y,
                   double sigma);

/// Correntropy-induced metric: sqrt(1 - correntropy). Symmetric, zero iff
/// x == y, bounded in [0, 1). The radicand is clamped at zero to absorb
/// rounding below zero when x is nearly equal to y.
double cim(std::span<const double> x, std::span<const double> y, double sigma);

}  // namespace caea
