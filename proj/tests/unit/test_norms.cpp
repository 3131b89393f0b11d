#include <doctest.h>

#include <limits>
#include <stdexcept>

#include <random>

#include "subw/norms.hpp"

using namespace subw;

TEST_CASE("lp_norm basics") {
    std::vector<double> v{3, 4};
    CHECK(lp_norm(v, BetaExponent::finite(2.0)) == doctest::Approx(5.0));
    std::vector<double> w{1, 2, 3};
    CHECK(lp_norm(w, BetaExponent::infinite()) == 3.0);
    std::vector<double> u{1, 1};
    CHECK(lp_norm(u, BetaExponent::finite(3.0)) ==
          doctest::Approx(1.2599210498948732).epsilon(1e-12));
    CHECK(lp_norm({}, BetaExponent::finite(2.0)) == 0.0);
}

TEST_CASE("lp_norm rejects invalid beta and non-finite input") {
    CHECK_THROWS_AS(BetaExponent::finite(0.5), std::invalid_argument);
    std::vector<double> bad{1.0, std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS(lp_norm(bad, BetaExponent::finite(2.0)), std::invalid_argument);
}

TEST_CASE("lp_norm survives huge beta without overflow") {
    std::vector<double> v{1e200, 1e200};
    double n = lp_norm(v, BetaExponent::finite(400.0));
    CHECK(n > 1e200);
    CHECK(n < 1.01e200 * std::pow(2.0, 1.0 / 400.0) * 1.01);
}

TEST_CASE("truncated_norm keeps the first floor(p) entries") {
    std::vector<double> v{4, 3, 2, 1};
    CHECK(truncated_norm(v, TruncationLevel(2.0), BetaExponent::infinite()) == 4.0);
    CHECK(truncated_norm(v, TruncationLevel(2.9), BetaExponent::finite(2.0)) ==
          doctest::Approx(5.0));
    std::vector<double> w{4, 3};
    CHECK(truncated_norm(w, TruncationLevel(10.0), BetaExponent::infinite()) == 4.0);
    CHECK_THROWS_AS(TruncationLevel(0.5), std::invalid_argument);
}

TEST_CASE("truncated_norm is monotone in p; collapses to the max for beta=inf") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 5.0);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + rng() % 10;
        std::vector<double> v(n);
        for (auto& x : v) x = unif(rng);
        std::sort(v.rbegin(), v.rend());  // canonical: nonincreasing
        double prev = 0.0;
        for (double p = 1.0; p <= 12.0; p += 0.7) {
            double cur = truncated_norm(v, TruncationLevel(p), BetaExponent::finite(2.0));
            CHECK(cur >= prev - 1e-15);
            prev = cur;
            // for the max-norm every prefix already attains the global max
            CHECK(truncated_norm(v, TruncationLevel(p), BetaExponent::infinite()) ==
                  lp_norm(v, BetaExponent::infinite()));
        }
    }
}

TEST_CASE("lp_norm is homogeneous") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 2.0);
    std::vector<double> v(6);
    for (auto& x : v) x = unif(rng);
    for (double beta : {1.0, 2.0, 3.5}) {
        double base = lp_norm(v, BetaExponent::finite(beta));
        std::vector<double> scaled(v);
        for (auto& x : scaled) x *= 7.5;
        CHECK(lp_norm(scaled, BetaExponent::finite(beta)) ==
              doctest::Approx(7.5 * base).epsilon(1e-12));
    }
}
