#pragma once

// Test-only oracles, deliberately independent of the library's quadrature and
// solver paths. Moments of the extremal laws come from incomplete-gamma
// closed forms; the two-sample KS statistic is computed directly.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace subw::test {

/// E|Z|^p for Pr[|Z| >= t] = exp(-min{t^2, (t/l)^alpha}) by splitting at the
/// branch crossover:
///   E|Z|^p = (p/2) gamma_lower(p/2, tc^2) + (p/alpha) l^p Gamma_upper(p/alpha, uc).
inline double z_abs_moment_pow(double alpha, double l, double p) {
    if (l <= 0.0) {
        return boost::math::tgamma(p / 2.0 + 1.0);  // pure Y case
    }
    if (alpha == 2.0) {
        double s = std::max(1.0, l);
        return std::pow(s, p) * boost::math::tgamma(p / 2.0 + 1.0);
    }
    double tc = std::pow(l, alpha / (alpha - 2.0));
    double uc = std::pow(tc / l, alpha);
    if (alpha < 2.0) {
        double first = (p / 2.0) * boost::math::tgamma_lower(p / 2.0, tc * tc);
        double second = (p / alpha) * std::pow(l, p) * boost::math::tgamma(p / alpha, uc);
        return first + second;
    }
    double first = (p / alpha) * std::pow(l, p) * boost::math::tgamma_lower(p / alpha, uc);
    double second = (p / 2.0) * boost::math::tgamma(p / 2.0, tc * tc);
    return first + second;
}

inline double z_moment(double alpha, double l, double p) {
    return std::pow(z_abs_moment_pow(alpha, l, p), 1.0 / p);
}

/// Two-sample Kolmogorov-Smirnov statistic on |values|.
inline double two_sample_ks(std::span<const double> xs, std::span<const double> ys) {
    std::vector<double> a(xs.size()), b(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) a[i] = std::abs(xs[i]);
    for (std::size_t i = 0; i < ys.size(); ++i) b[i] = std::abs(ys[i]);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) {
            ++i;
        } else {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

/// Pearson lag-1 autocorrelation.
inline double lag1_autocorrelation(std::span<const double> xs) {
    const std::size_t n = xs.size();
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = xs[i] - mean;
        den += d * d;
        if (i + 1 < n) num += d * (xs[i + 1] - mean);
    }
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace subw::test
