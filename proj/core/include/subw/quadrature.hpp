#pragma once

#include <functional>
#include <vector>

#include "subw/orlicz.hpp"

namespace subw {

/// What the expectation quadrature needs to know about a generator g:
/// log g'(x) as a function of log x (so the far tail never overflows), the
/// x-locations where g' has kinks, and the exponential growth envelope
/// log g'(x) ~ (x/growth_scale)^growth_gamma (growth_gamma = 0 for
/// subexponential generators such as phi_p).
struct GeneratorView {
    std::function<double(double)> log_deriv_logx;
    std::vector<double> kinks;
    double growth_gamma = 0.0;
    double growth_scale = 1.0;
};

GeneratorView make_view(const GBOFunction& g);
GeneratorView make_view(const PairMeanFunction& g);

/// E[g(|X|/eta)] = int_0^inf (1/eta) g'(t/eta) S(t) dt.
///
/// When the survival carries branch descriptors S(t) = exp(-(t/c)^gamma), each
/// branch is transformed with u = (t/c)^gamma so the integrand becomes a
/// gamma-type kernel; finite panels use tanh-sinh, the unbounded panel uses
/// exp-sinh. Divergence is decided from the growth/decay exponents before
/// integrating and reported as +inf. Closure-only survivals fall back to
/// panel doubling in t until the certified tail criterion is met.
///
/// Throws numerical_error when an error estimate exceeds tolerance.
double survival_expectation(const SurvivalFunction& s, const GeneratorView& g, double eta);

}  // namespace subw
