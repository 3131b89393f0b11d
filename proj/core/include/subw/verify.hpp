#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subw/bounds.hpp"
#include "subw/problem.hpp"

namespace subw::verify {

/// Per-grid comparison of empirical quantities against a rate, with fitted
/// constants where the rate carries an unspecified constant.
struct TightnessReport {
    std::vector<double> grid;       ///< p (moments) or t (tails) or nu
    std::vector<double> empirical;
    std::vector<double> ci_lo;
    std::vector<double> ci_hi;
    std::vector<double> rate;
    std::vector<double> ratio;
    double fitted_constant_upper = 0.0;
    double fitted_constant_lower = 0.0;
    double band_ratio = 1.0;        ///< max ratio / min ratio
    std::vector<std::string> warnings;
};

struct MomentEstimate {
    double estimate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    bool fragile = false;       ///< top order statistic carries > 1/2 the p-th power mass
    double top_weight = 0.0;
};

struct TailEstimate {
    double frequency = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

/// (mean |x|^p)^(1/p) via log-sum-exp, with a percentile bootstrap CI
/// (default 1000 resamples at 95%). Flags fragility instead of failing.
MomentEstimate empirical_moment(std::span<const double> xs, double p, std::uint64_t seed,
                                int bootstrap_resamples = 1000, unsigned jobs = 1);

/// Fraction of |x| >= t with a 95% Wilson score interval.
TailEstimate empirical_tail(std::span<const double> xs, double t);

/// Exact p-th absolute moment of Y: Gamma(p/2+1)^(1/p).
double y_moment_exact(double p);

/// Ratios of MC ||Z*||_p to the Rosenthal-type rate at c = 1 over a p-grid.
TightnessReport rosenthal_sandwich(const CanonicalProblem& problem,
                                   std::span<const double> p_grid, std::size_t reps,
                                   std::uint64_t seed, unsigned jobs = 1);

/// One empirical tail point.
struct TailPoint {
    double t = 0.0;
    double probability = 0.0;
};

/// Fits the smallest constants making the closed-form bounds hold at every
/// grid point: upper side against 2 exp(-m(t)/c), lower side (alpha <= 1)
/// against (1/c) exp(-c m(t)). Grid entries come as (t, tail probability), so
/// exact laws can stand in for samples.
TightnessReport fit_tail_constants(const CanonicalProblem& problem,
                                   std::span<const TailPoint> tail,
                                   bool fit_lower_side = true);

/// Sample-based wrapper: builds the admissible grid from empirical survival
/// levels (frequency >= 50/len) and fits both constants.
TightnessReport fit_tail_constants_mc(const CanonicalProblem& problem,
                                      std::span<const double> xs,
                                      std::span<const double> levels);

/// Smallest c with the empirical tail <= exp(-K(t)/c) at all admissible grid
/// points (t within the K domain).
double fit_k_tail_constant(const CanonicalProblem& problem,
                           std::span<const TailPoint> tail);

/// One-sample Kolmogorov-Smirnov statistic of |Z| draws against the exact
/// CDF 1 - exp(-min{t^2, (t/l)^alpha}).
double ks_check_z(double alpha, double l, std::size_t count, std::uint64_t seed);

/// Asymptotic one-sample KS critical value at the given level.
double ks_critical_value(double level, std::size_t count);

struct GboIntervalResult {
    double norm = 0.0;
    double lo = 0.0;   ///< min{sqrt2, 2^(1/alpha)}
    double hi = 0.0;   ///< max{sqrt3, 3^(1/alpha)}
    bool pass = false;
};

/// Checks the quadrature norm ||Z||_{phi_{alpha,l}} against its closed-form
/// interval, with 1e-4 slack for solver tolerance.
GboIntervalResult gbo_interval_check(double alpha, double l);

/// The standard problem battery used by the verification suites:
/// alpha in {0.5, 1, 2} x n in {1, 4, 16} x scale patterns
/// {constant, increasing, mixed}, all weights 1.
struct BatteryEntry {
    CanonicalProblem problem;
    std::string name;
};
std::vector<BatteryEntry> standard_battery();
std::vector<BatteryEntry> standard_battery(double alpha_max);

/// Six problems spanning alpha in {0.5, 1, 2} and n in {4, 16} where the MC
/// moment estimator stays reliable for p <= 8.
std::vector<BatteryEntry> latala_battery();

}  // namespace subw::verify
