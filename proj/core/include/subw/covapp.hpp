#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "subw/sampling.hpp"
#include "subw/verify.hpp"

namespace subw::covapp {

/// Grouped covariance-heterogeneity experiment: m groups of n mean-zero
/// q-dimensional standard Gaussian observations (identity covariance), the
/// worked case where the lower-tail hypothesis of the two-sided bound holds.
struct CovExperimentConfig {
    std::size_t m = 1;     ///< groups
    std::size_t n = 1;     ///< observations per group
    std::size_t q = 1;     ///< dimension
    std::size_t reps = 1;
    std::uint64_t seed = 0;
};

/// Symmetric q x q accumulation of the per-pair leading terms
/// T_ij = sum_l (Sigmahat_ij^(l) - delta_ij)^2 for one replication.
struct CovErrorStats {
    std::size_t q = 0;
    std::vector<double> t_matrix;  ///< row-major q x q, symmetric
    double sup_term = 0.0;

    double t(std::size_t i, std::size_t j) const { return t_matrix[i * q + j]; }
};

/// Uncentered empirical covariance (1/n) sum_k x_k x_k^T of one group.
/// data points at row(k), dimension q.
std::vector<double> empirical_covariance(std::span<const double> rows, std::size_t n,
                                         std::size_t q);

/// T_ij for all pairs and their sup over i <= j, from freshly sampled data.
CovErrorStats leading_term(const CovExperimentConfig& config, std::uint64_t seed);

/// 4 exp(-c min{n^2 t^2 / m, n t, n sqrt(t)}); raw value with over-one flag.
BoundValue cov_error_tail_upper(double t, std::size_t m, std::size_t n, double constant_c);

/// c ((m + sqrt(m nu) + nu)/n + nu^2/n^2), the 1 - e^-nu quantile bound.
double cov_error_quantile(double nu, std::size_t m, std::size_t n, double constant_c);

/// (1/c) exp(-c min{n^2 t^2 / m, n t, n sqrt(t)}).
BoundValue cov_error_tail_lower(double t, std::size_t m, std::size_t n, double constant_c);

struct CoverageRow {
    double nu = 0.0;
    double quantile_bound = 0.0;   ///< cov_error_quantile at the fitted constant
    double empirical_freq = 0.0;   ///< freq(T > bound)
    double target = 0.0;           ///< e^-nu
};

struct CoverageResult {
    double c_fit = 0.0;
    std::vector<CoverageRow> rows;
    std::vector<verify::TailPoint> centered_tail;  ///< exceedance of T - c_fit m/n
    double mean_t = 0.0;                           ///< empirical mean of the tracked T_ij
    std::vector<double> t_values;                  ///< per-rep tracked statistic
};

/// Runs reps replications, tracks T at a fixed entry (0,0 by convention),
/// fits the smallest c with freq(T > quantile(nu, c)) <= e^-nu over the nu
/// grid, and reports per-nu coverage plus the centered exceedance curve.
CoverageResult coverage_experiment(const CovExperimentConfig& config,
                                   std::span<const double> nu_grid, unsigned jobs = 1);

/// Per-rep sup_{i,j} T_ij for the rate-shape sweep.
std::vector<double> sup_leading_terms(const CovExperimentConfig& config, unsigned jobs = 1);

}  // namespace subw::covapp
