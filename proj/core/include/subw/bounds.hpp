#pragma once

#include <span>

#include "subw/norms.hpp"
#include "subw/problem.hpp"

namespace subw {

/// Which branch of a max/min attained a computed rate.
enum class Regime { subgaussian_branch, subweibull_branch, mixed };

const char* regime_name(Regime r);

/// A rate or bound evaluated at an explicit stand-in for the unspecified
/// constant. Values above 1 are reported raw, with over_one set, because
/// callers comparing shapes need the unclamped exponential.
struct BoundValue {
    double value = 0.0;
    double constant_c = 1.0;
    Regime regime = Regime::mixed;
    bool over_one = false;
};

struct GBOBoundParams {
    double l_star = 0.0;   ///< c * ||a.L||_beta / ||a.Lbar||_2
    double nu_star = 0.0;  ///< c * ||a.Lbar||_2
};

/// Legendre dual pair for the per-summand exponent of the normalized variable
/// Z_i / max{1, L_i}:
///   N_i(t)  = min{ Lbar_i^2 t^2, ((Lbar_i / L_i) t)^alpha }
///   N_i*(t) = max{ t^2 / (4 Lbar_i^2), (alpha-1) (L_i t / (Lbar_i alpha))^beta }
/// Defined for alpha > 1.
class DualFunctions {
public:
    DualFunctions(const CanonicalProblem& problem);
    double n_of(std::size_t i, double t) const;
    double n_star(std::size_t i, double t) const;

private:
    double alpha_;
    double beta_;
    std::vector<double> l_;
    std::vector<double> lbar_;
};

/// Rosenthal-type moment rate:
/// c * max{ sqrt(p) ||a.Lbar||_2, p^(1/alpha) ||(a_i L_i : i<=p)||_beta }.
BoundValue moment_rate(const CanonicalProblem& problem, double p, double constant_c = 1.0);

/// Unmixed-tail variant for unit psi_alpha norms, |a_1| >= ... >= |a_n|:
/// c * max{ sqrt(p) ||a||_2, p^(1/alpha) ||(a_i : i<=p)||_beta }.
BoundValue moment_rate_psi(std::span<const double> a, double alpha, double p,
                           double constant_c = 1.0);

/// L* and the norm level of the generalized-Orlicz bound for X*.
GBOBoundParams gbo_bound_params(const CanonicalProblem& problem, double constant_c = 1.0);

/// g(p) = sqrt(p) ||a.Lbar||_2 + p^(1/alpha) ||(a_i L_i : i<=p)||_beta.
double rate_sum(const CanonicalProblem& problem, double p);

/// K(t) = sup{ p >= 1 : g(p) <= t }, for t >= ||a.Lbar||_2 + ||a.L||_inf.
/// Monotone bisection, relative tolerance 1e-9; the returned K satisfies
/// g(K) <= t.
double K_of_t(const CanonicalProblem& problem, double t);

/// exp(-K(t) / c).
BoundValue tail_upper_K(const CanonicalProblem& problem, double t, double constant_c = 1.0);

enum class TailSide { upper, lower };

/// Closed-form tail bound with exponent
/// m(t) = min{ t^2 / ||a.Lbar||_2^2, t^alpha / ||a.L||_beta^alpha }:
/// upper: 2 exp(-m(t)/c); lower (alpha <= 1 only): (1/c) exp(-c m(t)).
BoundValue tail_closed_form(const CanonicalProblem& problem, double t, double constant_c,
                            TailSide side);

/// The closed-form exponent m(t) itself.
double tail_exponent(const CanonicalProblem& problem, double t);

/// Dual-function moment rate for alpha > 1:
/// inf{ s > 0 : sum_{i<=p} N_i*(p a_i Lbar_i / s) <= p }
///   + sqrt(p) (sum_{i>p} a_i^2 Lbar_i^2)^(1/2).
double dual_moment_rate(const CanonicalProblem& problem, double p);

}  // namespace subw
