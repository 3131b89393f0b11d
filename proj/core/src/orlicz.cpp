#include "subw/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "subw/errors.hpp"
#include "subw/quadrature.hpp"
#include "subw/solver.hpp"

namespace subw {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOverflowExponent = 700.0;
}  // namespace

GBOFunction::GBOFunction(double alpha, double l, bool psi)
    : alpha_(alpha), l_(l), psi_(psi) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("GBOFunction: alpha must be positive and finite");
    }
    if (!(l >= 0.0) || !std::isfinite(l)) {
        throw std::invalid_argument("GBOFunction: scale must be nonnegative and finite");
    }
}

GBOFunction GBOFunction::gbo(double alpha, double l) { return GBOFunction(alpha, l, false); }

GBOFunction GBOFunction::psi(double alpha) { return GBOFunction(alpha, 0.0, true); }

double GBOFunction::exponent(double x) const {
    if (x < 0.0) throw std::domain_error("GBOFunction: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (psi_) return std::pow(x, alpha_);
    double q = x * x;
    if (l_ <= 0.0) return q;
    return std::min(q, std::pow(x / l_, alpha_));
}

double GBOFunction::exponent_prime(double x) const {
    if (x < 0.0) throw std::domain_error("GBOFunction: x must be nonnegative");
    if (psi_) return alpha_ * std::pow(x, alpha_ - 1.0);
    if (l_ <= 0.0) return 2.0 * x;
    double q = x * x;
    double w = std::pow(x / l_, alpha_);
    if (q <= w) return 2.0 * x;
    return alpha_ / l_ * std::pow(x / l_, alpha_ - 1.0);
}

double GBOFunction::operator()(double x) const {
    double e = exponent(x);
    if (e > kOverflowExponent) return kInf;
    return std::expm1(e);
}

double GBOFunction::log_value(double x) const {
    double e = exponent(x);
    if (e == 0.0) return -kInf;
    // log(expm1(e)) = e + log(1 - exp(-e))
    return e + std::log1p(-std::exp(-e));
}

double GBOFunction::log_derivative(double x) const {
    double ep = exponent_prime(x);
    if (ep <= 0.0) return -kInf;
    return exponent(x) + std::log(ep);
}

double GBOFunction::crossover() const {
    if (psi_ || l_ <= 0.0 || alpha_ == 2.0) return kInf;
    return std::pow(l_, alpha_ / (alpha_ - 2.0));
}

double GBOFunction::growth_gamma() const {
    if (psi_) return alpha_;
    if (l_ <= 0.0) return 2.0;
    if (alpha_ < 2.0) return alpha_;
    return 2.0;
}

double GBOFunction::growth_scale() const {
    if (psi_ || l_ <= 0.0) return 1.0;
    if (alpha_ < 2.0) return l_;
    if (alpha_ == 2.0) return std::max(1.0, l_);
    return 1.0;
}

PairMeanFunction::PairMeanFunction(double p) : p_(p) {
    if (!(p >= 2.0) || !std::isfinite(p)) {
        throw std::domain_error("PairMeanFunction: p must be >= 2 and finite");
    }
}

double PairMeanFunction::operator()(double x) const {
    double ax = std::abs(x);
    return 0.5 * (std::pow(1.0 + ax, p_) + std::pow(std::abs(1.0 - ax), p_));
}

double PairMeanFunction::derivative(double x) const {
    if (x < 0.0) throw std::domain_error("PairMeanFunction: derivative defined for x >= 0");
    double a = std::pow(1.0 + x, p_ - 1.0);
    double b = std::pow(std::abs(1.0 - x), p_ - 1.0);
    return 0.5 * p_ * (a - std::copysign(b, 1.0 - x));
}

double PairMeanFunction::log_derivative(double x) const {
    if (x < 0.0) throw std::domain_error("PairMeanFunction: derivative defined for x >= 0");
    if (x == 0.0) return -kInf;
    double la = (p_ - 1.0) * std::log1p(x);
    if (x == 1.0) return std::log(0.5 * p_) + la;
    double lb = (p_ - 1.0) * std::log(std::abs(1.0 - x));
    if (x > 1.0) {
        double m = std::max(la, lb);
        return std::log(0.5 * p_) + m + std::log(std::exp(la - m) + std::exp(lb - m));
    }
    return std::log(0.5 * p_) + la + std::log1p(-std::exp(lb - la));
}

SurvivalFunction SurvivalFunction::z_law(double alpha, double l) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("SurvivalFunction::z_law: alpha must be positive");
    }
    if (!(l >= 0.0) || !std::isfinite(l)) {
        throw std::invalid_argument("SurvivalFunction::z_law: scale must be nonnegative");
    }
    SurvivalFunction s;
    s.log_s_ = [alpha, l](double t) {
        if (t <= 0.0) return 0.0;
        double q = t * t;
        if (l > 0.0) q = std::min(q, std::pow(t / l, alpha));
        return -q;
    };
    if (l <= 0.0) {
        s.branches_ = {{0.0, kInf, 2.0, 1.0}};
    } else if (alpha == 2.0) {
        s.branches_ = {{0.0, kInf, 2.0, std::max(1.0, l)}};
    } else {
        double tk = std::pow(l, alpha / (alpha - 2.0));
        if (alpha < 2.0) {
            s.branches_ = {{0.0, tk, 2.0, 1.0}, {tk, kInf, alpha, l}};
        } else {
            s.branches_ = {{0.0, tk, alpha, l}, {tk, kInf, 2.0, 1.0}};
        }
    }
    return s;
}

SurvivalFunction SurvivalFunction::y_law() { return z_law(1.0, 0.0); }

SurvivalFunction SurvivalFunction::point_mass_zero() {
    SurvivalFunction s;
    s.log_s_ = [](double t) { return t <= 0.0 ? 0.0 : -kInf; };
    s.zero_ = true;
    return s;
}

SurvivalFunction SurvivalFunction::from_closure(std::function<double(double)> survival) {
    SurvivalFunction s;
    // spot-check monotonicity and range on a log grid
    double prev = survival(0.0);
    if (!(prev <= 1.0 + 1e-12) || !(prev >= 0.0)) {
        throw std::invalid_argument("SurvivalFunction: S(0) must lie in [0, 1]");
    }
    bool all_zero = prev == 0.0;
    for (int i = -60; i <= 60; ++i) {
        double t = std::pow(10.0, i / 10.0);
        double v = survival(t);
        if (!(v >= 0.0) || !(v <= prev + 1e-12)) {
            throw std::invalid_argument("SurvivalFunction: closure is not nonincreasing in [0,1]");
        }
        all_zero = all_zero && v == 0.0;
        prev = v;
    }
    s.zero_ = all_zero;
    s.log_s_ = [fn = std::move(survival)](double t) {
        double v = fn(t);
        return v > 0.0 ? std::log(v) : -kInf;
    };
    return s;
}

double SurvivalFunction::operator()(double t) const { return std::exp(log_s_(t)); }

double SurvivalFunction::log_survival(double t) const { return log_s_(t); }

double gbo_value(const GBOFunction& g, double x) {
    if (!(x >= 0.0)) throw std::domain_error("gbo_value: x must be nonnegative");
    return g(x);
}

double gbo_expectation(const SurvivalFunction& s, const GBOFunction& g, double eta) {
    return survival_expectation(s, make_view(g), eta);
}

OrliczSolveReport orlicz_norm_analytic(const SurvivalFunction& s, const GBOFunction& g,
                                       double rel_tol) {
    OrliczSolveReport report;
    if (s.is_zero()) return report;
    GeneratorView view = make_view(g);
    auto objective = [&](double eta) { return survival_expectation(s, view, eta); };
    auto res = bisect_decreasing(objective, 1.0, 2.0, {rel_tol, 200});
    report.eta_star = res.hi;
    report.bracket_lo = res.lo;
    report.bracket_hi = res.hi;
    report.iterations = res.iterations;
    report.expectation_at_eta_star = res.value_at_hi;
    return report;
}

double orlicz_norm_sample(std::span<const double> xs, const GBOFunction& g, double rel_tol) {
    if (xs.empty()) throw std::invalid_argument("orlicz_norm_sample: empty sample");
    double max_abs = 0.0;
    for (double x : xs) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("orlicz_norm_sample: non-finite sample value");
        }
        max_abs = std::max(max_abs, std::abs(x));
    }
    if (max_abs == 0.0) return 0.0;
    const double logn = std::log(static_cast<double>(xs.size()));
    // log of the empirical mean of g(|x|/eta), via logsumexp
    auto log_mean = [&](double eta) {
        double m = -kInf;
        for (double x : xs) {
            double ax = std::abs(x);
            if (ax == 0.0) continue;
            m = std::max(m, g.log_value(ax / eta));
        }
        if (m == -kInf) return -kInf;
        if (m == kInf) return kInf;
        double acc = 0.0;
        for (double x : xs) {
            double ax = std::abs(x);
            if (ax == 0.0) continue;
            double lv = g.log_value(ax / eta);
            if (lv == kInf) return kInf;
            acc += std::exp(lv - m);
        }
        return m + std::log(acc) - logn;
    };
    auto res = bisect_decreasing(log_mean, 0.0, max_abs, {rel_tol, 200});
    return res.hi;
}

double log_phi_p_z(double eta, double p, double alpha, double l) {
    if (!(eta > 0.0)) throw std::domain_error("log_phi_p_z: eta must be positive");
    if (!(p >= 2.0)) throw std::domain_error("log_phi_p_z: p must be >= 2");
    if (!(alpha > 0.0)) throw std::domain_error("log_phi_p_z: alpha must be positive");
    if (!(l >= 0.0)) throw std::domain_error("log_phi_p_z: scale must be nonnegative");
    PairMeanFunction phi(p);
    double integral =
        survival_expectation(SurvivalFunction::z_law(alpha, l), make_view(phi), eta);
    if (std::isinf(integral)) return kInf;
    return std::log1p(integral);
}

LogPhiBoundPair log_phi_bounds(double eta, double p, double alpha, double l) {
    if (!(eta > 0.0)) throw std::domain_error("log_phi_bounds: eta must be positive");
    if (!(p >= 2.0)) throw std::domain_error("log_phi_bounds: p must be >= 2");
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::domain_error("log_phi_bounds: stated for alpha in (0, 1]");
    }
    if (!(l >= 0.0)) throw std::domain_error("log_phi_bounds: scale must be nonnegative");
    const double log_eta = std::log(eta);
    const double log_p = std::log(p);
    const double log_a = std::log(alpha);
    const double log_l = l > 0.0 ? std::log(l) : -kInf;
    // shared moment factors, all in log space:
    //   half-moment (p=2 slot): sqrt(alpha pi / 2) (2/(alpha e))^(2/alpha)
    //   p-moment slot:          sqrt(alpha pi / p) (p/(alpha e))^(p/alpha)
    const double log_m2 =
        0.5 * (log_a + std::log(std::numbers::pi) - std::numbers::ln2) +
        (2.0 / alpha) * (std::numbers::ln2 - log_a - 1.0);
    const double log_mp = 0.5 * (log_a + std::log(std::numbers::pi) - log_p) +
                          (p / alpha) * (log_p - log_a - 1.0);

    const double lo_t1 = log_p - 2.0 * log_eta - 6.0;
    const double lo_t2 = l > 0.0
                             ? log_p + 2.0 * log_l - 4.0 - 2.0 * log_eta + log_m2
                             : -kInf;
    const double lo_t3 = l > 0.0
                             ? p * log_l - 2.0 * p - p * log_eta + log_mp
                             : -kInf;
    const double up_t1 = std::log(16.0) + log_p - 2.0 * log_eta;
    const double up_t2 = l > 0.0
                             ? 4.0 + log_p + 2.0 * log_l - 2.0 * log_eta + log_m2
                             : -kInf;
    const double up_t3 = l > 0.0
                             ? 2.0 * p + p * log_l - p * log_eta + log_mp
                             : -kInf;

    LogPhiBoundPair out;
    double lo_max = std::max({lo_t1, lo_t2, lo_t3});
    out.lower = p * std::min(1.0, lo_max > kOverflowExponent ? kInf : std::exp(lo_max));
    double up_max = std::max({up_t1, up_t2, up_t3});
    out.upper = up_max > kOverflowExponent ? kInf : 2.0 * p * std::exp(up_max);
    return out;
}

OrliczSolveReport sequence_orlicz_report(const CanonicalProblem& problem, double p,
                                         double rel_tol) {
    if (!(p >= 2.0)) throw std::domain_error("sequence_orlicz_norm: p must be >= 2");
    const auto a = problem.weights();
    const auto l = problem.scales();
    const double alpha = problem.alpha();
    struct Term {
        double a;
        SurvivalFunction law;
        GeneratorView view;
    };
    PairMeanFunction phi(p);
    std::vector<Term> terms;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > 0.0) {
            terms.push_back({a[i], SurvivalFunction::z_law(alpha, l[i]), make_view(phi)});
        }
    }
    OrliczSolveReport report;
    if (terms.empty()) return report;
    auto objective = [&](double eta) {
        double acc = 0.0;
        for (const auto& term : terms) {
            double integral = survival_expectation(term.law, term.view, eta / term.a);
            if (std::isinf(integral)) return kInf;
            acc += std::log1p(integral);
        }
        return acc;
    };
    double eta0 = problem.weighted_lbar().front() * std::sqrt(p);
    auto res = bisect_decreasing(objective, p, eta0, {rel_tol, 200});
    report.eta_star = res.hi;
    report.bracket_lo = res.lo;
    report.bracket_hi = res.hi;
    report.iterations = res.iterations;
    report.expectation_at_eta_star = res.value_at_hi;
    return report;
}

double sequence_orlicz_norm(const CanonicalProblem& problem, double p, double rel_tol) {
    return sequence_orlicz_report(problem, p, rel_tol).eta_star;
}

}  // namespace subw
