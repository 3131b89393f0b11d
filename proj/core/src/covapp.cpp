#include "subw/covapp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "subw/parallel.hpp"
#include "subw/rng.hpp"

namespace subw::covapp {

namespace {

void check_config(const CovExperimentConfig& config) {
    if (config.m == 0 || config.n == 0 || config.q == 0 || config.reps == 0) {
        throw std::invalid_argument("covapp: m, n, q, reps must all be >= 1");
    }
}

/// One replication: accumulate T_ij over groups without materializing a cube.
CovErrorStats one_rep(const CovExperimentConfig& config, std::uint64_t rep_seed) {
    const std::size_t q = config.q;
    const std::size_t n = config.n;
    CovErrorStats stats;
    stats.q = q;
    stats.t_matrix.assign(q * q, 0.0);
    std::vector<double> sigma(q * q);
    std::vector<double> row(q);
    for (std::size_t l = 0; l < config.m; ++l) {
        std::fill(sigma.begin(), sigma.end(), 0.0);
        const std::uint64_t group_seed = child_seed(rep_seed, "gauss", l);
        for (std::size_t k = 0; k < n; ++k) {
            Stream stream(child_seed(group_seed, "obs", k));
            for (std::size_t j = 0; j < q; ++j) row[j] = stream.next_normal();
            for (std::size_t i = 0; i < q; ++i) {
                const double xi = row[i];
                double* out = sigma.data() + i * q;
                for (std::size_t j = i; j < q; ++j) out[j] += xi * row[j];
            }
        }
        const double inv_n = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < q; ++i) {
            for (std::size_t j = i; j < q; ++j) {
                double err = sigma[i * q + j] * inv_n - (i == j ? 1.0 : 0.0);
                stats.t_matrix[i * q + j] += err * err;
            }
        }
    }
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            stats.t_matrix[i * q + j] = stats.t_matrix[j * q + i];
        }
    }
    stats.sup_term = *std::max_element(stats.t_matrix.begin(), stats.t_matrix.end());
    return stats;
}

double branch_exponent(double t, std::size_t m, std::size_t n) {
    const double dn = static_cast<double>(n);
    const double dm = static_cast<double>(m);
    return std::min({dn * dn * t * t / dm, dn * t, dn * std::sqrt(t)});
}

}  // namespace

std::vector<double> empirical_covariance(std::span<const double> rows, std::size_t n,
                                         std::size_t q) {
    if (n == 0 || q == 0 || rows.size() != n * q) {
        throw std::invalid_argument("empirical_covariance: data must be n x q");
    }
    std::vector<double> sigma(q * q, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double* x = rows.data() + k * q;
        for (std::size_t i = 0; i < q; ++i) {
            for (std::size_t j = 0; j < q; ++j) sigma[i * q + j] += x[i] * x[j];
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (double& v : sigma) v *= inv_n;
    return sigma;
}

CovErrorStats leading_term(const CovExperimentConfig& config, std::uint64_t seed) {
    check_config(config);
    return one_rep(config, child_seed(seed, "covrep", 0));
}

BoundValue cov_error_tail_upper(double t, std::size_t m, std::size_t n, double constant_c) {
    if (!(t > 0.0)) throw std::domain_error("cov_error_tail_upper: t must be positive");
    BoundValue out;
    out.constant_c = constant_c;
    out.value = 4.0 * std::exp(-constant_c * branch_exponent(t, m, n));
    out.over_one = out.value > 1.0;
    return out;
}

double cov_error_quantile(double nu, std::size_t m, std::size_t n, double constant_c) {
    if (!(nu > 0.0)) throw std::domain_error("cov_error_quantile: nu must be positive");
    const double dn = static_cast<double>(n);
    const double dm = static_cast<double>(m);
    return constant_c * ((dm + std::sqrt(dm * nu) + nu) / dn + nu * nu / (dn * dn));
}

BoundValue cov_error_tail_lower(double t, std::size_t m, std::size_t n, double constant_c) {
    if (!(t > 0.0)) throw std::domain_error("cov_error_tail_lower: t must be positive");
    BoundValue out;
    out.constant_c = constant_c;
    out.value = std::exp(-constant_c * branch_exponent(t, m, n)) / constant_c;
    out.over_one = out.value > 1.0;
    return out;
}

CoverageResult coverage_experiment(const CovExperimentConfig& config,
                                   std::span<const double> nu_grid, unsigned jobs) {
    check_config(config);
    if (config.reps < 1000) {
        throw std::invalid_argument("coverage_experiment: reps must be >= 1e3");
    }
    if (nu_grid.empty()) throw std::invalid_argument("coverage_experiment: empty nu grid");

    CoverageResult result;
    result.t_values.resize(config.reps);
    parallel_for(config.reps, jobs, [&](std::size_t r) {
        CovErrorStats stats = one_rep(config, child_seed(config.seed, "covrep", r));
        result.t_values[r] = stats.t(0, 0);
    });
    result.mean_t = 0.0;
    for (double v : result.t_values) result.mean_t += v;
    result.mean_t /= static_cast<double>(config.reps);

    std::vector<double> sorted(result.t_values);
    std::sort(sorted.begin(), sorted.end());
    const double reps = static_cast<double>(config.reps);

    // smallest c with freq(T > c * expr(nu)) <= e^-nu simultaneously:
    // per nu, the smallest admissible threshold is the empirical value just
    // below which the exceedance would overshoot.
    double c_fit = 0.0;
    for (double nu : nu_grid) {
        const double level = std::exp(-nu);
        std::size_t k = static_cast<std::size_t>(std::ceil((1.0 - level) * reps));
        if (k >= sorted.size()) k = sorted.size() - 1;
        const double threshold = sorted[k];
        const double expr = cov_error_quantile(nu, config.m, config.n, 1.0);
        c_fit = std::max(c_fit, threshold / expr);
    }
    result.c_fit = c_fit;

    for (double nu : nu_grid) {
        CoverageRow row;
        row.nu = nu;
        row.quantile_bound = cov_error_quantile(nu, config.m, config.n, c_fit);
        std::size_t hits = 0;
        for (double v : result.t_values) {
            if (v > row.quantile_bound) ++hits;
        }
        row.empirical_freq = static_cast<double>(hits) / reps;
        row.target = std::exp(-nu);
        result.rows.push_back(row);
    }

    // centered exceedance curve at empirical survival levels
    const double center = c_fit * static_cast<double>(config.m) / static_cast<double>(config.n);
    for (double level : {0.3, 0.1, 0.03, 0.01}) {
        std::size_t idx = static_cast<std::size_t>((1.0 - level) * reps);
        idx = std::min(idx, sorted.size() - 1);
        double t = sorted[idx] - center;
        if (t <= 0.0) continue;
        std::size_t hits = 0;
        for (double v : result.t_values) {
            if (v - center >= t) ++hits;
        }
        result.centered_tail.push_back({t, static_cast<double>(hits) / reps});
    }
    return result;
}

std::vector<double> sup_leading_terms(const CovExperimentConfig& config, unsigned jobs) {
    check_config(config);
    std::vector<double> out(config.reps);
    parallel_for(config.reps, jobs, [&](std::size_t r) {
        out[r] = one_rep(config, child_seed(config.seed, "covrep", r)).sup_term;
    });
    return out;
}

}  // namespace subw::covapp
