#include "core/similarity.hpp"

#include <cmath>
#include <stdexcept>

namespace caea {

double gaussian_kernel(double a, double b, double sigma) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("gaussian_kernel: non-finite input");
    }
    if (!std::isfinite(sigma) || sigma <= 0.0) {
        throw std::invalid_argument("gaussian_kernel: sigma must be > 0");
    }
    const double diff = a - b;
    return std::exp(-(diff * diff) / (2.0 * sigma * sigma));
}

double correntropy(std::span<const double> x, std::span<const double> y,
                   double sigma) {
    if (x.size() != y.size() || x.empty()) {
        throw std::invalid_argument("correntropy: dimension mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += gaussian_kernel(x[i], y[i], sigma);
    }
    return sum / static_cast<double>(x.size());
}

double cim(std::span<const double> x, std::span<const double> y, double sigma) {
    const double radicand = 1.0 - correntropy(x, y, sigma);
    return std::sqrt(radicand < 0.0 ? 0.0 : radicand);
}

}  // namespace caea
