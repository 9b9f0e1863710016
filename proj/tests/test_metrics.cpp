#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "core/metrics.hpp"
#include "core/rng.hpp"

using caea::accuracy;
using caea::ari;
using caea::macro_f1;
using caea::nmi;

namespace {

// Pair-counting reference: walks all instance pairs and classifies the four
// agreement buckets, then applies the adjusted-Rand closed form with one
// final division, mirroring the exactness contract of the implementation.
double ari_pair_oracle(const std::vector<int>& truth,
                       const std::vector<int>& pred) {
    std::int64_t both = 0, truth_only = 0, pred_only = 0, neither = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        for (std::size_t j = i + 1; j < truth.size(); ++j) {
            const bool same_truth = truth[i] == truth[j];
            const bool same_pred = pred[i] == pred[j];
            if (same_truth && same_pred) ++both;
            else if (same_truth) ++truth_only;
            else if (same_pred) ++pred_only;
            else ++neither;
        }
    }
    const std::int64_t numerator = 2 * (both * neither - truth_only * pred_only);
    const std::int64_t denominator =
        (both + truth_only) * (truth_only + neither) +
        (both + pred_only) * (pred_only + neither);
    if (denominator == 0) return 1.0;
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

// enumerate labelings of n instances over at most c classes
bool next_labeling(std::vector<int>& labels, int c) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (++labels[i] < c) return true;
        labels[i] = 0;
    }
    return false;
}

// canonical = first occurrence order 0,1,2,...; skips relabelings
bool is_canonical(const std::vector<int>& labels) {
    int next = 0;
    for (int v : labels) {
        if (v > next) return false;
        if (v == next) ++next;
    }
    return true;
}

}  // namespace

TEST_CASE("accuracy") {
    CHECK(accuracy(std::vector<int>{1, 2, 3}, std::vector<int>{1, 2, 3}) == 1.0);
    CHECK(accuracy(std::vector<int>{1, 1}, std::vector<int>{2, 2}) == 0.0);
    CHECK(accuracy(std::vector<int>{0, 0, 1, 1}, std::vector<int>{0, 1, 1, 1}) ==
          0.75);
    CHECK_THROWS_AS(accuracy(std::vector<int>{1}, std::vector<int>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(accuracy(std::vector<int>{}, std::vector<int>{}),
                    std::invalid_argument);
}

TEST_CASE("nmi") {
    SUBCASE("identical partitions reach 1 within 1e-12") {
        const std::vector<int> a = {0, 0, 1, 1, 2, 2};
        CHECK(nmi(a, a) == doctest::Approx(1.0).epsilon(1e-12));
        // relabeled copy scores identically
        const std::vector<int> relabeled = {7, 7, 3, 3, 5, 5};
        CHECK(nmi(a, relabeled) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("constant prediction carries no information") {
        CHECK(nmi(std::vector<int>{0, 0, 1, 1}, std::vector<int>{5, 5, 5, 5}) ==
              0.0);
    }
    SUBCASE("both single-cluster partitions agree trivially") {
        CHECK(nmi(std::vector<int>{3, 3, 3}, std::vector<int>{9, 9, 9}) == 1.0);
    }
    SUBCASE("frozen mixed example") {
        // truth (A,A,B,B), pred (1,1,1,2)
        CHECK(nmi(std::vector<int>{0, 0, 1, 1}, std::vector<int>{1, 1, 1, 2}) ==
              doctest::Approx(0.3455920299442113).epsilon(1e-12));
    }
}

TEST_CASE("ari") {
    SUBCASE("identical partitions") {
        CHECK(ari(std::vector<int>{0, 1, 0, 2}, std::vector<int>{0, 1, 0, 2}) ==
              1.0);
    }
    SUBCASE("frozen crossed example") {
        CHECK(ari(std::vector<int>{0, 0, 1, 1}, std::vector<int>{0, 1, 0, 1}) ==
              -0.5);
    }
    SUBCASE("single instance hits the degenerate rule") {
        CHECK(ari(std::vector<int>{0}, std::vector<int>{4}) == 1.0);
    }
    SUBCASE("exhaustive agreement with the pair-counting oracle") {
        // all canonical truths x all predictions, up to 6 instances, 3 classes
        for (int n = 1; n <= 6; ++n) {
            std::vector<int> truth(static_cast<std::size_t>(n), 0);
            do {
                if (!is_canonical(truth)) continue;
                std::vector<int> pred(static_cast<std::size_t>(n), 0);
                do {
                    CHECK(ari(truth, pred) == ari_pair_oracle(truth, pred));
                } while (next_labeling(pred, 3));
            } while (next_labeling(truth, 3));
        }
    }
    SUBCASE("random larger instances agree exactly") {
        caea::SplitMix64 rng(0xA21);
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t n = 7 + rng.below(2);  // 7 or 8
            std::vector<int> truth(n);
            std::vector<int> pred(n);
            for (std::size_t i = 0; i < n; ++i) {
                truth[i] = static_cast<int>(rng.below(3));
                pred[i] = static_cast<int>(rng.below(3));
            }
            CHECK(ari(truth, pred) == ari_pair_oracle(truth, pred));
        }
    }
}

TEST_CASE("macro f1") {
    CHECK(macro_f1(std::vector<int>{2, 2, 5}, std::vector<int>{2, 2, 5}) == 1.0);
    // truth (A,A,B,B), pred (A,A,A,A): class A F1 = 2/3, class B F1 = 0
    CHECK(macro_f1(std::vector<int>{0, 0, 1, 1}, std::vector<int>{0, 0, 0, 0}) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // predictions entirely outside the truth classes
    CHECK(macro_f1(std::vector<int>{0, 0, 1}, std::vector<int>{7, 7, 7}) == 0.0);
}

TEST_CASE("predicted-side relabeling invariance of nmi and ari") {
    caea::SplitMix64 rng(0x9E9);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.below(30);
        std::vector<int> truth(n);
        std::vector<int> pred(n);
        for (std::size_t i = 0; i < n; ++i) {
            truth[i] = static_cast<int>(rng.below(4));
            pred[i] = static_cast<int>(rng.below(4));
        }
        // remap predicted ids through a fixed injective map
        std::vector<int> remapped(n);
        for (std::size_t i = 0; i < n; ++i) remapped[i] = 100 - 7 * pred[i];
        CHECK(nmi(truth, pred) == doctest::Approx(nmi(truth, remapped)).epsilon(1e-12));
        CHECK(ari(truth, pred) == ari(truth, remapped));

        // range invariants
        const double m = nmi(truth, pred);
        CHECK(m >= 0.0);
        CHECK(m <= 1.0);
        const double r = ari(truth, pred);
        CHECK(r >= -1.0);
        CHECK(r <= 1.0);
        const double f = macro_f1(truth, pred);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
}
