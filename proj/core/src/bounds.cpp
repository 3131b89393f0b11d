#include "subw/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "subw/solver.hpp"

namespace subw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

BoundValue pick_max(double subgaussian, double subweibull, double constant_c) {
    BoundValue out;
    out.constant_c = constant_c;
    if (subgaussian > subweibull) {
        out.regime = Regime::subgaussian_branch;
        out.value = constant_c * subgaussian;
    } else if (subweibull > subgaussian) {
        out.regime = Regime::subweibull_branch;
        out.value = constant_c * subweibull;
    } else {
        out.regime = Regime::mixed;
        out.value = constant_c * subgaussian;
    }
    return out;
}

void check_p(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw std::domain_error("moment order p must be >= 1 and finite");
    }
}

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::subgaussian_branch: return "subgaussian_branch";
        case Regime::subweibull_branch: return "subweibull_branch";
        case Regime::mixed: return "mixed";
    }
    return "unknown";
}

DualFunctions::DualFunctions(const CanonicalProblem& problem)
    : alpha_(problem.alpha()) {
    if (!(alpha_ > 1.0)) {
        throw std::domain_error("DualFunctions: defined for alpha > 1 only");
    }
    beta_ = alpha_ / (alpha_ - 1.0);
    l_.assign(problem.scales().begin(), problem.scales().end());
    lbar_ = lbar(problem.scales());
}

double DualFunctions::n_of(std::size_t i, double t) const {
    double quad = lbar_[i] * lbar_[i] * t * t;
    if (l_[i] <= 0.0) return quad;
    return std::min(quad, std::pow(lbar_[i] / l_[i] * t, alpha_));
}

double DualFunctions::n_star(std::size_t i, double t) const {
    double quad = t * t / (4.0 * lbar_[i] * lbar_[i]);
    if (l_[i] <= 0.0) return quad;
    double weib = (alpha_ - 1.0) * std::pow(l_[i] * t / (lbar_[i] * alpha_), beta_);
    return std::max(quad, weib);
}

BoundValue moment_rate(const CanonicalProblem& problem, double p, double constant_c) {
    check_p(p);
    double sg = std::sqrt(p) * lp_norm(problem.weighted_lbar(), BetaExponent::finite(2.0));
    double sw = std::pow(p, 1.0 / problem.alpha()) *
                truncated_norm(problem.weighted_scales(), TruncationLevel(p), problem.beta());
    return pick_max(sg, sw, constant_c);
}

BoundValue moment_rate_psi(std::span<const double> a, double alpha, double p,
                           double constant_c) {
    check_p(p);
    if (!(alpha > 0.0)) throw std::domain_error("moment_rate_psi: alpha must be positive");
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (std::abs(a[i]) > std::abs(a[i - 1])) {
            throw std::invalid_argument("moment_rate_psi: |a| must be nonincreasing");
        }
    }
    double sg = std::sqrt(p) * lp_norm(a, BetaExponent::finite(2.0));
    double sw = std::pow(p, 1.0 / alpha) * truncated_norm(a, TruncationLevel(p), beta_of(alpha));
    return pick_max(sg, sw, constant_c);
}

GBOBoundParams gbo_bound_params(const CanonicalProblem& problem, double constant_c) {
    double n2 = lp_norm(problem.weighted_lbar(), BetaExponent::finite(2.0));
    if (n2 <= 0.0) {
        throw std::domain_error("gbo_bound_params: all weights zero, norm ratio undefined");
    }
    GBOBoundParams out;
    out.l_star = constant_c * lp_norm(problem.weighted_scales(), problem.beta()) / n2;
    out.nu_star = constant_c * n2;
    return out;
}

double rate_sum(const CanonicalProblem& problem, double p) {
    check_p(p);
    double sg = std::sqrt(p) * lp_norm(problem.weighted_lbar(), BetaExponent::finite(2.0));
    double sw = std::pow(p, 1.0 / problem.alpha()) *
                truncated_norm(problem.weighted_scales(), TruncationLevel(p), problem.beta());
    return sg + sw;
}

double K_of_t(const CanonicalProblem& problem, double t) {
    double threshold = lp_norm(problem.weighted_lbar(), BetaExponent::finite(2.0)) +
                       lp_norm(problem.weighted_scales(), BetaExponent::infinite());
    if (!(t >= threshold)) {
        throw std::domain_error("K_of_t: t below the domain threshold ||a.Lbar||_2 + ||a.L||_inf");
    }
    auto g = [&](double p) { return rate_sum(problem, p); };
    auto res = bisect_increasing_sup(g, t, 1.0, std::ldexp(1.0, 40), {1e-9, 200});
    return res.lo;
}

BoundValue tail_upper_K(const CanonicalProblem& problem, double t, double constant_c) {
    if (!(constant_c > 0.0)) throw std::domain_error("tail_upper_K: constant must be positive");
    BoundValue out;
    out.constant_c = constant_c;
    out.regime = Regime::mixed;
    out.value = std::exp(-K_of_t(problem, t) / constant_c);
    out.over_one = out.value > 1.0;
    return out;
}

double tail_exponent(const CanonicalProblem& problem, double t) {
    if (!(t >= 0.0)) throw std::domain_error("tail_exponent: t must be nonnegative");
    if (t == 0.0) return 0.0;
    double n2 = lp_norm(problem.weighted_lbar(), BetaExponent::finite(2.0));
    double nb = lp_norm(problem.weighted_scales(), problem.beta());
    double quad = n2 > 0.0 ? t * t / (n2 * n2) : kInf;
    double weib = nb > 0.0 ? std::pow(t / nb, problem.alpha()) : kInf;
    return std::min(quad, weib);
}

BoundValue tail_closed_form(const CanonicalProblem& problem, double t, double constant_c,
                            TailSide side) {
    if (!(constant_c > 0.0)) {
        throw std::domain_error("tail_closed_form: constant must be positive");
    }
    if (side == TailSide::lower && problem.alpha() > 1.0) {
        throw std::domain_error("tail_closed_form: lower bound supported for alpha <= 1 only");
    }
    double m = tail_exponent(problem, t);
    double n2 = lp_norm(problem.weighted_lbar(), BetaExponent::finite(2.0));
    double nb = lp_norm(problem.weighted_scales(), problem.beta());
    BoundValue out;
    out.constant_c = constant_c;
    if (!std::isfinite(m)) {
        // degenerate all-zero problem: both norms vanish
        out.value = 0.0;
        return out;
    }
    double quad = n2 > 0.0 ? t * t / (n2 * n2) : kInf;
    double weib = nb > 0.0 ? std::pow(t / nb, problem.alpha()) : kInf;
    out.regime = quad < weib    ? Regime::subgaussian_branch
                 : weib < quad ? Regime::subweibull_branch
                               : Regime::mixed;
    if (side == TailSide::upper) {
        out.value = 2.0 * std::exp(-m / constant_c);
    } else {
        out.value = std::exp(-constant_c * m) / constant_c;
    }
    out.over_one = out.value > 1.0;
    return out;
}

double dual_moment_rate(const CanonicalProblem& problem, double p) {
    check_p(p);
    DualFunctions dual(problem);  // rejects alpha <= 1
    const auto& a_lbar = problem.weighted_lbar();
    const std::size_t n = problem.size();
    const std::size_t head = std::min<std::size_t>(static_cast<std::size_t>(std::floor(p)), n);

    double tail_sq = 0.0;
    for (std::size_t i = head; i < n; ++i) tail_sq += a_lbar[i] * a_lbar[i];
    double tail_term = std::sqrt(p) * std::sqrt(tail_sq);

    bool head_zero = true;
    for (std::size_t i = 0; i < head; ++i) {
        if (a_lbar[i] > 0.0) head_zero = false;
    }
    if (head_zero) return tail_term;

    auto h = [&](double s) {
        double acc = 0.0;
        for (std::size_t i = 0; i < head; ++i) {
            if (a_lbar[i] > 0.0) acc += dual.n_star(i, p * a_lbar[i] / s);
        }
        return acc;
    };
    double s0 = a_lbar[0] * std::sqrt(p);
    auto res = bisect_decreasing(h, p, s0, {1e-9, 200});
    return res.hi + tail_term;
}

}  // namespace subw
