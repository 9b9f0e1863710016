#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "core/rng.hpp"
#include "core/similarity.hpp"

using caea::cim;
using caea::correntropy;
using caea::gaussian_kernel;

TEST_CASE("gaussian kernel known values") {
    CHECK(gaussian_kernel(0.0, 0.0, 1.0) == 1.0);
    CHECK(gaussian_kernel(2.0, 2.0, 0.1) == 1.0);
    CHECK(gaussian_kernel(0.0, 1.0, 1.0) ==
          doctest::Approx(0.6065306597126334).epsilon(1e-15));
}

TEST_CASE("gaussian kernel rejects bad arguments") {
    CHECK_THROWS_AS(gaussian_kernel(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_kernel(0.0, 1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_kernel(NAN, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_kernel(0.0, INFINITY, 1.0), std::invalid_argument);
}

TEST_CASE("correntropy known values") {
    const std::vector<double> zeros = {0.0, 0.0};
    const std::vector<double> ones = {1.0, 1.0};
    const std::vector<double> e1 = {1.0, 0.0};
    CHECK(correntropy(zeros, zeros, 0.37) == 1.0);
    CHECK(correntropy(zeros, ones, 1.0) ==
          doctest::Approx(0.6065306597126334).epsilon(1e-15));
    CHECK(correntropy(zeros, e1, 1.0) ==
          doctest::Approx(0.8032653298563167).epsilon(1e-15));
}

TEST_CASE("correntropy rejects mismatched dimensions") {
    const std::vector<double> a = {1.0, 2.0};
    const std::vector<double> b = {1.0};
    CHECK_THROWS_AS(correntropy(a, b, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(correntropy({}, {}, 1.0), std::invalid_argument);
}

TEST_CASE("cim known values") {
    const std::vector<double> x = {0.4, -1.2, 3.0};
    CHECK(cim(x, x, 0.8) == 0.0);
    CHECK(cim(std::vector<double>{0.0}, std::vector<double>{1.0}, 1.0) ==
          doctest::Approx(0.6272713450233213).epsilon(1e-15));
    CHECK(cim(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 0.0},
              1.0) == doctest::Approx(0.443547821709997).epsilon(1e-15));
}

// 10,000 randomized triples: range, symmetry, identity-zero, and 1-D
// monotonicity in both the offset and the bandwidth. Coordinates are drawn
// within a few bandwidths of each other; once every kernel term underflows,
// the metric saturates at exactly 1 and the open upper bound is vacuous.
TEST_CASE("cim randomized invariants") {
    caea::SplitMix64 rng(0xC1A0);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t d = 1 + rng.below(6);
        const double sigma = 0.05 + rng.next_double() * 5.0;
        std::vector<double> x(d);
        std::vector<double> y(d);
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = (rng.next_double() - 0.5) * 8.0 * sigma;
            y[i] = (rng.next_double() - 0.5) * 8.0 * sigma;
        }

        const double v = cim(x, y, sigma);
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
        CHECK(v == cim(y, x, sigma));
        CHECK(cim(x, x, sigma) == 0.0);

        // strictly increasing in |t| on a 1-D slice
        const double base = x[0];
        const double t1 = (0.01 + rng.next_double()) * sigma;
        const double t2 = t1 * 1.5 + 0.01 * sigma;
        const double near_v =
            cim(std::vector<double>{base}, std::vector<double>{base + t1}, sigma);
        const double far_v =
            cim(std::vector<double>{base}, std::vector<double>{base + t2}, sigma);
        CHECK(near_v < far_v);

        // strictly decreasing in sigma for fixed distinct points
        const double wider =
            cim(std::vector<double>{base}, std::vector<double>{base + t1},
                sigma * 1.7);
        CHECK(wider < near_v);
    }
}
