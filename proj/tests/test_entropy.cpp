#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "entroprune/entropy.hpp"
#include "entroprune/rng.hpp"
#include "oracles.hpp"

using namespace entroprune;

namespace {

LabelVector random_labels(Rng& rng, int d, int n_c) {
    LabelVector v(d);
    for (auto& x : v) x = static_cast<Label>(rng.bounded(n_c));
    return v;
}

}  // namespace

TEST_CASE("entropy on known vectors") {
    CHECK(entropy(LabelVector{0, 1, 0, 1}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(entropy(LabelVector{0, 0, 0, 0}) == doctest::Approx(0.0).epsilon(1e-12));
    // p = (1/2, 1/4, 1/4)
    CHECK(entropy(LabelVector{0, 0, 1, 2}) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(entropy(LabelVector{0, 0, 1, 2}) ==
          doctest::Approx(oracle::entropy({0, 0, 1, 2})).epsilon(1e-12));
}

TEST_CASE("entropy rejects empty input") {
    CHECK_THROWS_AS(entropy(LabelVector{}), std::invalid_argument);
}

TEST_CASE("joint entropy on known vectors") {
    CHECK(joint_entropy(LabelVector{0, 0, 1, 1}, LabelVector{0, 1, 0, 1}) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(joint_entropy(LabelVector{0, 0, 1, 1}, LabelVector{0, 0, 1, 1}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // joint counts (2, 1, 1)
    CHECK(joint_entropy(LabelVector{0, 0, 1, 1}, LabelVector{0, 0, 1, 0}) ==
          doctest::Approx(1.5).epsilon(1e-12));
    CHECK_THROWS_AS(joint_entropy(LabelVector{0, 1}, LabelVector{0, 1, 0}), std::invalid_argument);
}

TEST_CASE("mutual information on known vectors") {
    CHECK(mutual_information(LabelVector{0, 0, 1, 1}, LabelVector{0, 1, 0, 1}) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mutual_information(LabelVector{0, 0, 1, 1}, LabelVector{0, 0, 1, 1}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    const double expected = oracle::mutual_information({0, 0, 1, 1}, {0, 0, 1, 0});
    CHECK(expected == doctest::Approx(0.31128).epsilon(1e-4));
    CHECK(mutual_information(LabelVector{0, 0, 1, 1}, LabelVector{0, 0, 1, 0}) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK_THROWS_AS(mutual_information(LabelVector{0}, LabelVector{0, 1}), std::invalid_argument);
}

TEST_CASE("normalized mutual information") {
    CHECK(norm_mi(LabelVector{0, 1, 0, 1}, LabelVector{0, 1, 0, 1}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // a constant vector carries no information
    CHECK(norm_mi(LabelVector{0, 0, 0, 0}, LabelVector{0, 1, 0, 1}) == 0.0);
    const double expected = oracle::norm_mi({0, 0, 1, 1}, {0, 0, 1, 0});
    CHECK(expected == doctest::Approx(0.34560).epsilon(1e-3));
    CHECK(norm_mi(LabelVector{0, 0, 1, 1}, LabelVector{0, 0, 1, 0}) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("normalized variation of information") {
    CHECK(norm_vi(LabelVector{0, 1, 0, 1}, LabelVector{0, 1, 0, 1}) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(norm_vi(LabelVector{0, 0, 1, 1}, LabelVector{0, 1, 0, 1}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    const double expected = oracle::norm_vi({0, 0, 1, 1}, {0, 0, 1, 0});
    CHECK(expected == doctest::Approx(0.79248).epsilon(1e-4));
    CHECK(norm_vi(LabelVector{0, 0, 1, 1}, LabelVector{0, 0, 1, 0}) ==
          doctest::Approx(expected).epsilon(1e-12));
    // two constant vectors are identical as information
    CHECK(norm_vi(LabelVector{0, 0}, LabelVector{1, 1}) == 0.0);
}

TEST_CASE("kernels match the counting oracle on random pairs") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + static_cast<int>(rng.bounded(60));
        const int n_c = 2 + static_cast<int>(rng.bounded(4));
        const LabelVector x = random_labels(rng, d, n_c);
        const LabelVector y = random_labels(rng, d, n_c);
        CHECK(entropy(x) == doctest::Approx(oracle::entropy(x)).epsilon(1e-12));
        CHECK(joint_entropy(x, y) == doctest::Approx(oracle::joint_entropy(x, y)).epsilon(1e-12));
        CHECK(norm_mi(x, y) == doctest::Approx(oracle::norm_mi(x, y)).epsilon(1e-12));
        CHECK(norm_vi(x, y) == doctest::Approx(oracle::norm_vi(x, y)).epsilon(1e-12));
    }
}

TEST_CASE("symmetry and bounds over random pairs") {
    Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const int d = 1 + static_cast<int>(rng.bounded(40));
        const int n_c = 2 + static_cast<int>(rng.bounded(5));
        const LabelVector x = random_labels(rng, d, n_c);
        const LabelVector y = random_labels(rng, d, n_c);

        CHECK(mutual_information(x, y) == mutual_information(y, x));
        CHECK(norm_mi(x, y) == norm_mi(y, x));
        CHECK(norm_vi(x, y) == norm_vi(y, x));
        CHECK(joint_entropy(x, y) == joint_entropy(y, x));

        const double nmi = norm_mi(x, y);
        const double nvi = norm_vi(x, y);
        CHECK(nmi >= -1e-12);
        CHECK(nmi <= 1.0 + 1e-12);
        CHECK(nvi >= -1e-12);
        CHECK(nvi <= 1.0 + 1e-12);

        const double hx = entropy(x), hy = entropy(y), hxy = joint_entropy(x, y);
        CHECK(hxy >= std::max(hx, hy) - 1e-9);
        CHECK(hxy <= hx + hy + 1e-9);
    }
}

TEST_CASE("norm_vi satisfies the triangle inequality" * doctest::timeout(60)) {
    Rng rng(13);
    for (int trial = 0; trial < 10000; ++trial) {
        const int d = 2 + static_cast<int>(rng.bounded(30));
        const int n_c = 2 + static_cast<int>(rng.bounded(4));
        const LabelVector x = random_labels(rng, d, n_c);
        const LabelVector y = random_labels(rng, d, n_c);
        const LabelVector z = random_labels(rng, d, n_c);
        CHECK(norm_vi(x, y) + norm_vi(y, z) >= norm_vi(x, z) - 1e-9);
        CHECK(norm_vi(x, x) == 0.0);
    }
}

TEST_CASE("normalized quantities are log-base independent") {
    Rng rng(17);
    const double e = std::exp(1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + static_cast<int>(rng.bounded(50));
        const int n_c = 2 + static_cast<int>(rng.bounded(4));
        const LabelVector x = random_labels(rng, d, n_c);
        const LabelVector y = random_labels(rng, d, n_c);
        CHECK(norm_mi(x, y, 2.0) == doctest::Approx(norm_mi(x, y, e)).epsilon(1e-12));
        CHECK(norm_vi(x, y, 2.0) == doctest::Approx(norm_vi(x, y, e)).epsilon(1e-12));
    }
}

TEST_CASE("contingency table counts and marginals") {
    const LabelVector x{0, 0, 1, 2};
    const LabelVector y{1, 1, 0, 1};
    const auto t = ContingencyTable::from(x, y);
    CHECK(t.n_c == 3);
    CHECK(t.total == 4);
    CHECK(t.joint(0, 1) == 2);
    CHECK(t.joint(1, 0) == 1);
    CHECK(t.joint(2, 1) == 1);
    std::int64_t sum = 0;
    for (auto c : t.joint_counts) sum += c;
    CHECK(sum == t.total);
    for (int a = 0; a < t.n_c; ++a) {
        std::int64_t row = 0, col = 0;
        for (int b = 0; b < t.n_c; ++b) {
            row += t.joint(a, b);
            col += t.joint(b, a);
        }
        CHECK(row == t.marginals_x[a]);
        CHECK(col == t.marginals_y[a]);
    }
}

TEST_CASE("class ids with gaps count as empty bins") {
    // ids {0,2} imply a three-class universe; the empty class contributes 0
    const LabelVector x{0, 2, 0, 2};
    CHECK(entropy(x) == doctest::Approx(1.0).epsilon(1e-12));
    const auto t = ContingencyTable::from(x, x);
    CHECK(t.n_c == 3);
    CHECK(t.marginals_x[1] == 0);
}
