#pragma once

#include <functional>
#include <span>
#include <vector>

#include "subw/problem.hpp"

namespace subw {

/// Orlicz generator family. The two-branch member is
///   phi_{alpha,L}(x) = exp(min{x^2, (x/L)^alpha}) - 1,
/// and psi_alpha(x) = exp(x^alpha) - 1 is the degenerate single-branch member.
/// Values are computed through the exponent in log-safe form; overflow yields
/// +inf, never NaN.
class GBOFunction {
public:
    static GBOFunction gbo(double alpha, double l);
    static GBOFunction psi(double alpha);

    double alpha() const { return alpha_; }
    double scale() const { return l_; }
    bool is_psi() const { return psi_; }

    /// min{x^2, (x/L)^alpha} (or x^alpha for psi).
    double exponent(double x) const;
    double exponent_prime(double x) const;
    /// g(x) = expm1(exponent(x)).
    double operator()(double x) const;
    /// log g(x), safe for large exponents; -inf at x = 0.
    double log_value(double x) const;
    /// log g'(x) = exponent(x) + log(exponent'(x)); -inf where the derivative
    /// vanishes.
    double log_derivative(double x) const;

    /// Branch-swap point of the two-branch exponent; +inf when one branch
    /// dominates everywhere.
    double crossover() const;
    /// Asymptotics exponent(x) ~ (x/growth_scale)^growth_gamma for large x.
    double growth_gamma() const;
    double growth_scale() const;

private:
    GBOFunction(double alpha, double l, bool psi);
    double alpha_;
    double l_;
    bool psi_;
};

/// phi_p(x) = (|1+x|^p + |1-x|^p)/2 for p >= 2. Even, >= 1, equal to 1 only
/// at x = 0.
class PairMeanFunction {
public:
    explicit PairMeanFunction(double p);
    double p() const { return p_; }
    double operator()(double x) const;
    /// For x >= 0: (p/2) ((1+x)^(p-1) - sgn(1-x) |1-x|^(p-1)).
    double derivative(double x) const;
    double log_derivative(double x) const;

private:
    double p_;
};

/// A survival branch on [t_lo, t_hi) with S(t) = exp(-(t/scale)^gamma).
struct SurvivalBranch {
    double t_lo;
    double t_hi;
    double gamma;
    double scale;
};

/// t -> Pr[|X| >= t] on [0, inf), nonincreasing, S(0) <= 1. Built-ins carry
/// exact piecewise-Weibull branch descriptors used by the quadrature engine;
/// closures are spot-checked for monotonicity on a grid at construction.
class SurvivalFunction {
public:
    static SurvivalFunction z_law(double alpha, double l);
    static SurvivalFunction y_law();
    static SurvivalFunction point_mass_zero();
    static SurvivalFunction from_closure(std::function<double(double)> survival);

    double operator()(double t) const;
    double log_survival(double t) const;
    const std::vector<SurvivalBranch>& branches() const { return branches_; }
    bool is_zero() const { return zero_; }

private:
    SurvivalFunction() = default;
    std::function<double(double)> log_s_;
    std::vector<SurvivalBranch> branches_;
    bool zero_ = false;
};

struct OrliczSolveReport {
    double eta_star = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
    double expectation_at_eta_star = 0.0;
};

/// E[g(|X|/eta)] for the law given by its survival function, by the
/// tail-integral identity int (1/eta) g'(t/eta) S(t) dt. Returns +inf when the
/// expectation diverges.
double gbo_expectation(const SurvivalFunction& s, const GBOFunction& g, double eta);

/// g(x) with the domain check x >= 0.
double gbo_value(const GBOFunction& g, double x);

/// ||X||_g = inf{eta > 0 : E[g(|X|/eta)] <= 1} via quadrature plus bisection.
/// Degenerate point mass at zero returns 0.
OrliczSolveReport orlicz_norm_analytic(const SurvivalFunction& s, const GBOFunction& g,
                                       double rel_tol = 1e-6);

/// Empirical plug-in Orlicz norm: bisection of mean g(|x_i|/eta) to level 1,
/// computed in log space. All-zero sample returns 0.
double orlicz_norm_sample(std::span<const double> xs, const GBOFunction& g,
                          double rel_tol = 1e-6);

/// log E[phi_p(Z/eta)] for Z with survival exp(-min{t^2, (t/l)^alpha}).
double log_phi_p_z(double eta, double p, double alpha, double l);

struct LogPhiBoundPair {
    double lower = 0.0;
    double upper = 0.0;
};

/// The explicit two-sided envelope of log E[phi_p(Z/eta)] for alpha <= 1:
///   lower = p min{1, max{p/(eta^2 e^6),
///                        (p l^2/(e^4 eta^2)) sqrt(alpha pi/2) (2/(alpha e))^(2/alpha),
///                        (l^p/(e^(2p) eta^p)) sqrt(alpha pi/p) (p/(alpha e))^(p/alpha)}}
///   upper = 2p max{16 p/eta^2,
///                  (e^4 p l^2/eta^2) sqrt(alpha pi/2) (2/(alpha e))^(2/alpha),
///                  (e^(2p) l^p/eta^p) sqrt(alpha pi/p) (p/(alpha e))^(p/alpha)}
/// evaluated in log space.
LogPhiBoundPair log_phi_bounds(double eta, double p, double alpha, double l);

/// |||(a_i Z_i)|||_p = inf{eta > 0 : sum_i log E[phi_p(a_i Z_i/eta)] < p},
/// solved by bisection to relative tolerance rel_tol. All-zero weights give 0.
double sequence_orlicz_norm(const CanonicalProblem& problem, double p,
                            double rel_tol = 1e-6);

/// Same solve with the bracket/iteration report; expectation_at_eta_star holds
/// the log-phi sum at the returned eta.
OrliczSolveReport sequence_orlicz_report(const CanonicalProblem& problem, double p,
                                         double rel_tol = 1e-6);

}  // namespace subw
