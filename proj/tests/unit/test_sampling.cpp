#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "subw/sampling.hpp"
#include "subw/verify.hpp"

#include "../support/oracles.hpp"

using namespace subw;

TEST_CASE("samplers are bit-exact under the same seed and spec") {
    auto a = sample_z(0.5, 2.0, 1000, 99);
    auto b = sample_z(0.5, 2.0, 1000, 99);
    CHECK(a.values == b.values);
    CHECK(a.spec == b.spec);
    auto c = sample_z(0.5, 2.0, 1000, 100);
    CHECK(a.values != c.values);

    auto y1 = sample_y(100, 7);
    auto y2 = sample_y(100, 7);
    CHECK(y1.values == y2.values);
}

TEST_CASE("every Z draw satisfies the inverse-transform identity") {
    // recovering s = min(z^2, (z/l)^alpha) and re-applying the max reproduces |z|
    for (double alpha : {0.5, 1.0, 2.0}) {
        for (double l : {0.0, 0.5, 2.0}) {
            auto batch = sample_z(alpha, l, 500, 1234);
            for (double z : batch.values) {
                double az = std::abs(z);
                double s = az * az;
                if (l > 0.0) s = std::min(s, std::pow(az / l, alpha));
                double rebuilt = std::sqrt(s);
                if (l > 0.0) rebuilt = std::max(rebuilt, l * std::pow(s, 1.0 / alpha));
                CHECK(rebuilt == doctest::Approx(az).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("Y tail frequency matches e^-1 within 3 standard errors") {
    const std::size_t n = 200000;
    auto batch = sample_y(n, 11);
    std::size_t hits = 0;
    for (double v : batch.values) {
        if (std::abs(v) >= 1.0) ++hits;
    }
    double freq = static_cast<double>(hits) / static_cast<double>(n);
    double p = std::exp(-1.0);
    double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    CHECK(std::abs(freq - p) < 3.0 * se);
}

TEST_CASE("direct inversion and the max{|Y|, l|Y|^(2/alpha)} route coincide in law") {
    const std::size_t n = 200000;
    for (double alpha : {0.5, 1.0}) {
        double l = 2.0;
        auto direct = sample_z(alpha, l, n, 21);
        auto ys = sample_y(n, 22);
        std::vector<double> via_y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double ay = std::abs(ys.values[i]);
            via_y[i] = std::max(ay, l * std::pow(ay, 2.0 / alpha));
        }
        double d = subw::test::two_sample_ks(direct.values, via_y);
        double crit = 1.949 * std::sqrt(2.0 / static_cast<double>(n));  // 1e-3 level
        CHECK(d < crit);
    }
}

TEST_CASE("Z* of a zero problem is identically zero; a singleton matches Z") {
    auto zero = canonicalize(WeightedSumProblem(1.0, {0, 0, 0}, {1, 1, 1}));
    auto batch = sample_zstar(zero, 50, 5);
    for (double v : batch.values) CHECK(v == 0.0);

    auto single = canonicalize(WeightedSumProblem(0.5, {1}, {2}));
    auto star = sample_zstar(single, 100000, 17);
    auto direct = sample_z(0.5, 2.0, 100000, 18);
    double d = subw::test::two_sample_ks(star.values, direct.values);
    CHECK(d < 1.949 * std::sqrt(2.0 / 100000.0));
}

TEST_CASE("Z* is centered: mean within 3 MC standard errors of zero") {
    auto prob = canonicalize(WeightedSumProblem(1.0, {1, 1, 1, 1}, {1, 1, 1, 1}));
    const std::size_t reps = 100000;
    auto batch = sample_zstar(prob, reps, 23);
    double mean = 0.0, var = 0.0;
    for (double v : batch.values) mean += v;
    mean /= static_cast<double>(reps);
    for (double v : batch.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(reps - 1);
    CHECK(std::abs(mean) < 3.0 * std::sqrt(var / static_cast<double>(reps)));
}

TEST_CASE("substreams look independent: lag-1 autocorrelation below 3/sqrt(n)") {
    const std::size_t n = 100000;
    auto z = sample_z(1.0, 1.0, n, 31);
    CHECK(std::abs(subw::test::lag1_autocorrelation(z.values)) <
          3.0 / std::sqrt(static_cast<double>(n)));
    auto star = sample_zstar(canonicalize(WeightedSumProblem(0.5, {1, 1}, {0.5, 2})), n, 37);
    CHECK(std::abs(subw::test::lag1_autocorrelation(star.values)) <
          3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("gaussian cube: unit variances, vanishing cross-covariance, reproducible") {
    const std::size_t m = 2, n = 20000, q = 3;
    auto cube = sample_gaussian_groups(m, n, q, 41);
    auto cube2 = sample_gaussian_groups(m, n, q, 41);
    CHECK(cube.values == cube2.values);

    for (std::size_t l = 0; l < m; ++l) {
        for (std::size_t j = 0; j < q; ++j) {
            double s2 = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                double x = cube.at(l, k, j);
                s2 += x * x;
            }
            s2 /= static_cast<double>(n);
            // Var(x^2) = 2 for standard normals
            CHECK(std::abs(s2 - 1.0) < 3.0 * std::sqrt(2.0 / static_cast<double>(n)));
        }
        double cross = 0.0;
        for (std::size_t k = 0; k < n; ++k) cross += cube.at(l, k, 0) * cube.at(l, k, 1);
        cross /= static_cast<double>(n);
        CHECK(std::abs(cross) < 3.0 / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("sampler rejects bad arguments") {
    CHECK_THROWS_AS(sample_z(0.0, 1.0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_z(1.0, -1.0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_y(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_gaussian_groups(0, 1, 1, 1), std::invalid_argument);
}
