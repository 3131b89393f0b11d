#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "subw/covapp.hpp"

using namespace subw;
namespace sc = subw::covapp;

TEST_CASE("empirical_covariance of a single observation is the outer product") {
    std::vector<double> x{1.0, 2.0};
    auto sigma = sc::empirical_covariance(x, 1, 2);
    CHECK(sigma == std::vector<double>{1, 2, 2, 4});

    std::vector<double> zeros(6, 0.0);
    auto z = sc::empirical_covariance(zeros, 3, 2);
    for (double v : z) CHECK(v == 0.0);

    CHECK_THROWS_AS(sc::empirical_covariance(x, 2, 2), std::invalid_argument);
}

TEST_CASE("empirical_covariance approaches the identity for large n") {
    auto cube = sample_gaussian_groups(1, 50000, 3, 7);
    auto sigma = sc::empirical_covariance(
        std::span<const double>(cube.values.data(), cube.values.size()), 50000, 3);
    double se_diag = std::sqrt(2.0 / 50000.0);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            double target = i == j ? 1.0 : 0.0;
            double se = i == j ? se_diag : 1.0 / std::sqrt(50000.0);
            CHECK(std::abs(sigma[i * 3 + j] - target) < 3.5 * se);
        }
    }
}

TEST_CASE("leading_term is symmetric and deterministic") {
    sc::CovExperimentConfig config{4, 20, 3, 1, 0};
    auto s1 = sc::leading_term(config, 11);
    auto s2 = sc::leading_term(config, 11);
    CHECK(s1.t_matrix == s2.t_matrix);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(s1.t(i, j) == s1.t(j, i));
            CHECK(s1.t(i, j) >= 0.0);
            CHECK(s1.sup_term >= s1.t(i, j));
        }
    }
}

TEST_CASE("diagonal leading terms average 2m/n") {
    // E[T_ii] = m Var(Sigmahat_ii) = 2m/n for the identity Gaussian model
    sc::CovExperimentConfig config{5, 50, 2, 4000, 3};
    auto result = sc::coverage_experiment(config, std::vector<double>{1.0}, 2);
    double expected = 2.0 * 5.0 / 50.0;
    // Var(T_00) per rep is O(m (2/n)^2); 3 sigma of the mean over reps
    double se = std::sqrt(5.0 * 3.0 * std::pow(2.0 / 50.0, 2.0) /
                          static_cast<double>(config.reps));
    CHECK(std::abs(result.mean_t - expected) < 4.0 * se);
}

TEST_CASE("cov_error_quantile worked values and monotonicity") {
    CHECK(sc::cov_error_quantile(1.0, 4, 10, 1.0) == doctest::Approx(0.71));
    // nu -> 0+ tends to c m / n
    CHECK(sc::cov_error_quantile(1e-12, 4, 10, 2.0) == doctest::Approx(0.8).epsilon(1e-5));
    double prev = 0.0;
    for (double nu = 0.5; nu < 40.0; nu *= 1.7) {
        double q = sc::cov_error_quantile(nu, 20, 200, 1.3);
        CHECK(q > prev);
        prev = q;
    }
    CHECK_THROWS_AS(sc::cov_error_quantile(0.0, 4, 10, 1.0), std::domain_error);
}

TEST_CASE("covariance tail bounds: branch arithmetic and ordering") {
    // small t: n^2 t^2 / m branch
    auto b = sc::cov_error_tail_upper(0.01, 100, 10, 1.0);
    CHECK(b.value == doctest::Approx(4.0 * std::exp(-1e-4)));
    CHECK(b.over_one);

    // large t: n sqrt(t) branch
    auto big = sc::cov_error_tail_upper(100.0, 2, 10, 1.0);
    CHECK(big.value == doctest::Approx(4.0 * std::exp(-100.0)).epsilon(1e-9));

    // degenerate c = 0 stays flagged rather than failing
    auto degenerate = sc::cov_error_tail_upper(1.0, 2, 10, 0.0);
    CHECK(degenerate.value == 4.0);
    CHECK(degenerate.over_one);

    // lower stays below upper once c >= 1 (1/c <= 4, shared exponent)
    for (double t : {0.05, 0.5, 5.0}) {
        for (double c : {1.0, 2.0}) {
            CHECK(sc::cov_error_tail_lower(t, 20, 100, c).value <=
                  sc::cov_error_tail_upper(t, 20, 100, c).value + 1e-15);
        }
    }
    CHECK(sc::cov_error_tail_upper(1.0, 2, 10, 1.0).value ==
          doctest::Approx(4.0 * std::exp(-10.0)).epsilon(1e-12));

    double prev = 1e9;
    for (double t = 0.01; t < 100.0; t *= 2.0) {
        double v = sc::cov_error_tail_upper(t, 20, 100, 1.0).value;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("coverage_experiment fits a constant that enforces the target") {
    sc::CovExperimentConfig config{5, 50, 3, 2000, 17};
    std::vector<double> nus{1.0, 2.0, 4.0};
    auto result = sc::coverage_experiment(config, nus, 2);
    CHECK(result.c_fit > 0.0);
    CHECK(std::isfinite(result.c_fit));
    for (const auto& row : result.rows) {
        CHECK(row.empirical_freq <= row.target + 1e-12);
    }
    // determinism, including across jobs settings
    auto again = sc::coverage_experiment(config, nus, 1);
    CHECK(again.c_fit == result.c_fit);
    CHECK(again.t_values == result.t_values);

    CHECK_THROWS_AS(
        sc::coverage_experiment(sc::CovExperimentConfig{1, 1, 1, 10, 0}, nus, 1),
        std::invalid_argument);
}

TEST_CASE("sup_leading_terms is deterministic and positive") {
    sc::CovExperimentConfig config{3, 30, 4, 50, 29};
    auto sup1 = sc::sup_leading_terms(config, 2);
    auto sup2 = sc::sup_leading_terms(config, 1);
    CHECK(sup1 == sup2);
    for (double v : sup1) CHECK(v > 0.0);
}
