#include "subw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "subw/errors.hpp"
#include "subw/orlicz.hpp"
#include "subw/parallel.hpp"
#include "subw/rng.hpp"
#include "subw/sampling.hpp"
#include "subw/solver.hpp"

namespace subw::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZ95 = 1.959963984540054;

double log_mean_pow(std::span<const double> xs, double p, double* top_weight) {
    // log( mean |x|^p ) via log-sum-exp over p*log|x|
    double m = -kInf;
    for (double x : xs) {
        double ax = std::abs(x);
        if (ax > 0.0) m = std::max(m, p * std::log(ax));
    }
    if (m == -kInf) {
        if (top_weight) *top_weight = 0.0;
        return -kInf;  // all zeros
    }
    double acc = 0.0;
    for (double x : xs) {
        double ax = std::abs(x);
        if (ax > 0.0) acc += std::exp(p * std::log(ax) - m);
    }
    if (top_weight) *top_weight = 1.0 / acc;  // the max term contributes exp(0) = 1
    return m + std::log(acc) - std::log(static_cast<double>(xs.size()));
}

}  // namespace

MomentEstimate empirical_moment(std::span<const double> xs, double p, std::uint64_t seed,
                                int bootstrap_resamples, unsigned jobs) {
    if (xs.empty()) throw std::invalid_argument("empirical_moment: empty sample");
    if (!(p >= 1.0)) throw std::invalid_argument("empirical_moment: p must be >= 1");
    MomentEstimate out;
    double lm = log_mean_pow(xs, p, &out.top_weight);
    out.estimate = lm == -kInf ? 0.0 : std::exp(lm / p);
    out.fragile = out.top_weight > 0.5;

    const std::size_t n = xs.size();
    // precompute |x|^p rescaled by the max so resampled means stay in range
    double mx = 0.0;
    for (double x : xs) mx = std::max(mx, std::abs(x));
    if (mx == 0.0) return out;
    std::vector<double> pow_scaled(n);
    for (std::size_t i = 0; i < n; ++i) {
        double ax = std::abs(xs[i]);
        pow_scaled[i] = ax > 0.0 ? std::exp(p * (std::log(ax) - std::log(mx))) : 0.0;
    }
    std::vector<double> boots(static_cast<std::size_t>(bootstrap_resamples));
    const std::uint64_t parent = child_seed(seed, "bootstrap", 0);
    parallel_for(boots.size(), jobs, [&](std::size_t b) {
        Stream stream(child_seed(parent, "resample", b));
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t idx = static_cast<std::size_t>(stream.next_u64() % n);
            acc += pow_scaled[idx];
        }
        boots[b] = mx * std::pow(acc / static_cast<double>(n), 1.0 / p);
    });
    std::sort(boots.begin(), boots.end());
    auto quantile = [&](double q) {
        double pos = q * static_cast<double>(boots.size() - 1);
        std::size_t i = static_cast<std::size_t>(pos);
        double frac = pos - static_cast<double>(i);
        if (i + 1 >= boots.size()) return boots.back();
        return boots[i] * (1.0 - frac) + boots[i + 1] * frac;
    };
    out.ci_lo = quantile(0.025);
    out.ci_hi = quantile(0.975);
    return out;
}

TailEstimate empirical_tail(std::span<const double> xs, double t) {
    if (xs.empty()) throw std::invalid_argument("empirical_tail: empty sample");
    if (!(t >= 0.0)) throw std::invalid_argument("empirical_tail: t must be nonnegative");
    std::size_t hits = 0;
    for (double x : xs) {
        if (std::abs(x) >= t) ++hits;
    }
    const double n = static_cast<double>(xs.size());
    const double phat = static_cast<double>(hits) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = kZ95 * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    TailEstimate out;
    out.frequency = phat;
    out.ci_lo = std::max(0.0, center - half);
    out.ci_hi = std::min(1.0, center + half);
    return out;
}

double y_moment_exact(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("y_moment_exact: p must be >= 1");
    return std::exp(std::lgamma(p / 2.0 + 1.0) / p);
}

TightnessReport rosenthal_sandwich(const CanonicalProblem& problem,
                                   std::span<const double> p_grid, std::size_t reps,
                                   std::uint64_t seed, unsigned jobs) {
    TightnessReport report;
    if (p_grid.empty()) throw std::invalid_argument("rosenthal_sandwich: empty p grid");
    for (double p : p_grid) {
        if (p > 16.0) {
            report.warnings.push_back("p=" + std::to_string(p) +
                                      " beyond 16: MC moment estimation degrades");
        }
    }
    SampleBatch batch = sample_zstar(problem, reps, seed);
    double lo = kInf, hi = 0.0;
    for (double p : p_grid) {
        MomentEstimate est =
            empirical_moment(batch.values, p, child_seed(seed, "moment", 0), 1000, jobs);
        if (est.fragile) {
            std::ostringstream w;
            w << "p=" << p << ": top order statistic carries weight " << est.top_weight;
            report.warnings.push_back(w.str());
        }
        double rate = moment_rate(problem, p, 1.0).value;
        double ratio = rate > 0.0 ? est.estimate / rate : kInf;
        report.grid.push_back(p);
        report.empirical.push_back(est.estimate);
        report.ci_lo.push_back(est.ci_lo);
        report.ci_hi.push_back(est.ci_hi);
        report.rate.push_back(rate);
        report.ratio.push_back(ratio);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    report.band_ratio = lo > 0.0 ? hi / lo : kInf;
    return report;
}

TightnessReport fit_tail_constants(const CanonicalProblem& problem,
                                   std::span<const TailPoint> tail, bool fit_lower_side) {
    if (tail.empty()) throw std::invalid_argument("fit_tail_constants: empty grid");
    if (fit_lower_side && problem.alpha() > 1.0) {
        throw std::domain_error("fit_tail_constants: lower-side fit requires alpha <= 1");
    }
    TightnessReport report;
    double c_upper = 0.0;
    double c_lower = 0.0;
    for (const auto& pt : tail) {
        if (!(pt.probability > 0.0) || !(pt.probability <= 1.0)) {
            throw std::invalid_argument("fit_tail_constants: probabilities must be in (0, 1]");
        }
        double m = tail_exponent(problem, pt.t);
        // upper: emp <= 2 exp(-m/c)  <=>  c >= m / log(2/emp)
        c_upper = std::max(c_upper, m / std::log(2.0 / pt.probability));
        if (fit_lower_side) {
            // lower: (1/c) exp(-c m) <= emp; the left side decreases in c
            auto f = [&](double c) { return std::exp(-c * m) / c; };
            if (f(1e-9) > pt.probability) {
                auto res = bisect_decreasing(f, pt.probability, 1.0, {1e-9, 300});
                c_lower = std::max(c_lower, res.hi);
            }
        }
        report.grid.push_back(pt.t);
        report.empirical.push_back(pt.probability);
        report.ci_lo.push_back(pt.probability);
        report.ci_hi.push_back(pt.probability);
        report.rate.push_back(m);
        report.ratio.push_back(m > 0.0 ? std::log(1.0 / pt.probability) / m : 1.0);
    }
    report.fitted_constant_upper = c_upper;
    report.fitted_constant_lower = c_lower;
    if (!report.ratio.empty()) {
        auto [mn, mx] = std::minmax_element(report.ratio.begin(), report.ratio.end());
        report.band_ratio = *mn > 0.0 ? *mx / *mn : kInf;
    }
    return report;
}

TightnessReport fit_tail_constants_mc(const CanonicalProblem& problem,
                                      std::span<const double> xs,
                                      std::span<const double> levels) {
    if (xs.empty()) throw std::invalid_argument("fit_tail_constants_mc: empty sample");
    std::vector<double> sorted(xs.begin(), xs.end());
    for (double& v : sorted) v = std::abs(v);
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    std::vector<TailPoint> grid;
    for (double level : levels) {
        if (level < 50.0 / n) continue;  // too deep for reliable frequencies
        std::size_t idx = static_cast<std::size_t>((1.0 - level) * n);
        idx = std::min(idx, sorted.size() - 1);
        double t = sorted[idx];
        if (!(t > 0.0)) continue;
        std::size_t hits = sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), t);
        grid.push_back({t, static_cast<double>(hits) / n});
    }
    if (grid.empty()) {
        throw std::domain_error("fit_tail_constants_mc: no admissible grid points");
    }
    return fit_tail_constants(problem, grid, problem.alpha() <= 1.0);
}

double fit_k_tail_constant(const CanonicalProblem& problem,
                           std::span<const TailPoint> tail) {
    double threshold = lp_norm(problem.weighted_lbar(), BetaExponent::finite(2.0)) +
                       lp_norm(problem.weighted_scales(), BetaExponent::infinite());
    double c = 0.0;
    bool any = false;
    for (const auto& pt : tail) {
        if (pt.t < threshold || !(pt.probability > 0.0) || pt.probability >= 1.0) continue;
        any = true;
        c = std::max(c, K_of_t(problem, pt.t) / std::log(1.0 / pt.probability));
    }
    if (!any) throw std::domain_error("fit_k_tail_constant: no grid point in the K(t) domain");
    return c;
}

double ks_check_z(double alpha, double l, std::size_t count, std::uint64_t seed) {
    if (count < 10000) throw std::invalid_argument("ks_check_z: count must be >= 1e4");
    SampleBatch batch = sample_z(alpha, l, count, seed);
    std::vector<double> v(batch.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(batch.values[i]);
    std::sort(v.begin(), v.end());
    auto cdf = [&](double t) {
        double q = t * t;
        if (l > 0.0) q = std::min(q, std::pow(t / l, alpha));
        return -std::expm1(-q);
    };
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double f = cdf(v[i]);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    return d;
}

double ks_critical_value(double level, std::size_t count) {
    if (!(level > 0.0) || !(level < 1.0)) {
        throw std::invalid_argument("ks_critical_value: level must be in (0,1)");
    }
    // solve 2 sum_k (-1)^(k-1) exp(-2 k^2 x^2) = level
    auto q = [](double x) {
        double acc = 0.0;
        for (int k = 1; k <= 100; ++k) {
            double term = std::exp(-2.0 * k * k * x * x);
            acc += (k % 2 == 1 ? term : -term);
            if (term < 1e-18) break;
        }
        return 2.0 * acc;
    };
    auto res = bisect_decreasing(q, level, 1.0, {1e-12, 300});
    return res.hi / std::sqrt(static_cast<double>(count));
}

GboIntervalResult gbo_interval_check(double alpha, double l) {
    GboIntervalResult out;
    out.lo = std::min(std::sqrt(2.0), std::pow(2.0, 1.0 / alpha));
    out.hi = std::max(std::sqrt(3.0), std::pow(3.0, 1.0 / alpha));
    auto report = orlicz_norm_analytic(SurvivalFunction::z_law(alpha, l),
                                       GBOFunction::gbo(alpha, l), 1e-6);
    out.norm = report.eta_star;
    out.pass = out.norm >= out.lo - 1e-4 && out.norm <= out.hi + 1e-4;
    return out;
}

std::vector<BatteryEntry> latala_battery() {
    std::vector<BatteryEntry> out;
    auto add = [&](double alpha, std::vector<double> l, const std::string& name) {
        std::vector<double> a(l.size(), 1.0);
        out.push_back({canonicalize(WeightedSumProblem(alpha, a, std::move(l))), name});
    };
    add(2.0, std::vector<double>(4, 1.0), "alpha2-n4-const");
    {
        std::vector<double> l(16);
        for (std::size_t i = 0; i < 16; ++i) l[i] = 0.5 + 1.5 * static_cast<double>(i) / 15.0;
        add(2.0, l, "alpha2-n16-incr");
    }
    add(1.0, std::vector<double>(4, 2.0), "alpha1-n4-L2");
    {
        std::vector<double> l(16);
        for (std::size_t i = 0; i < 16; ++i) l[i] = 0.5 + 1.5 * static_cast<double>(i) / 15.0;
        add(1.0, l, "alpha1-n16-incr");
    }
    add(0.5, std::vector<double>(4, 0.5), "alpha05-n4-L05");
    {
        constexpr double cycle[4] = {0.0, 2.0, 0.5, 1.0};
        std::vector<double> l(16);
        for (std::size_t i = 0; i < 16; ++i) l[i] = cycle[i % 4];
        add(0.5, l, "alpha05-n16-mixed");
    }
    return out;
}

std::vector<BatteryEntry> standard_battery() { return standard_battery(2.0); }

std::vector<BatteryEntry> standard_battery(double alpha_max) {
    std::vector<BatteryEntry> out;
    for (double alpha : {0.5, 1.0, 2.0}) {
        if (alpha > alpha_max) continue;
        for (std::size_t n : {std::size_t{1}, std::size_t{4}, std::size_t{16}}) {
            for (const char* pattern : {"constant", "increasing", "mixed"}) {
                std::vector<double> a(n, 1.0), l(n);
                for (std::size_t i = 0; i < n; ++i) {
                    if (pattern == std::string("constant")) {
                        l[i] = 1.0;
                    } else if (pattern == std::string("increasing")) {
                        l[i] = n == 1 ? 0.5
                                      : 0.5 + 1.5 * static_cast<double>(i) /
                                                  static_cast<double>(n - 1);
                    } else {
                        constexpr double cycle[4] = {0.0, 2.0, 0.5, 1.0};
                        l[i] = cycle[i % 4];
                    }
                }
                std::ostringstream name;
                name << "alpha" << alpha << "-n" << n << "-" << pattern;
                out.push_back(
                    {canonicalize(WeightedSumProblem(alpha, a, l)), name.str()});
            }
        }
    }
    return out;
}

}  // namespace subw::verify
