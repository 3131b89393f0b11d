#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "subw/errors.hpp"

namespace subw {

struct BisectionResult {
    double lo = 0.0;          ///< largest tested point on the "above level" side
    double hi = 0.0;          ///< smallest tested point on the "at or below level" side
    int iterations = 0;
    double value_at_hi = 0.0;
};

struct BisectionOptions {
    double rel_tol = 1e-9;
    int max_iterations = 200;
};

/// Solves inf{ x > 0 : f(x) <= level } for a nonincreasing f by bracket
/// doubling/halving from x0 followed by bisection. f may return +inf on the
/// high side of the level. The final bracket is checked for monotone
/// consistency; a violation raises numerical_error instead of returning a
/// silent answer.
template <typename F>
BisectionResult bisect_decreasing(F&& f, double level, double x0,
                                  const BisectionOptions& opt = {}) {
    if (!(x0 > 0.0) || !std::isfinite(x0)) {
        throw numerical_error("bisect_decreasing: bad starting point");
    }
    double lo = 0.0, hi = 0.0;  // f(lo) > level >= f(hi)
    double x = x0;
    int it = 0;
    double fx = f(x);
    if (fx <= level) {
        hi = x;
        while (it++ < opt.max_iterations) {
            x *= 0.5;
            if (f(x) > level) { lo = x; break; }
            hi = x;
            if (x < std::numeric_limits<double>::min() * 1e10) {
                // objective stays at or below level arbitrarily close to 0
                return {0.0, 0.0, it, f(hi)};
            }
        }
        if (lo == 0.0) return {0.0, 0.0, it, f(hi)};
    } else {
        lo = x;
        while (it++ < opt.max_iterations) {
            x *= 2.0;
            if (!(f(x) > level)) { hi = x; break; }
            lo = x;
            if (x > 1e300) throw numerical_error("bisect_decreasing: no upper bracket");
        }
        if (hi == 0.0) throw numerical_error("bisect_decreasing: bracket expansion failed");
    }
    while (it < opt.max_iterations && (hi - lo) > opt.rel_tol * hi) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) <= level) hi = mid; else lo = mid;
        ++it;
    }
    double f_lo = f(lo), f_hi = f(hi);
    if (!(f_lo > level) || !(f_hi <= level)) {
        throw numerical_error("bisect_decreasing: objective not monotone across bracket [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return {lo, hi, it, f_hi};
}

/// Solves sup{ x >= x_min : f(x) <= level } for a nondecreasing f, given that
/// f(x_min) <= level. The bracket grows by doubling from x_min up to x_cap.
/// Returns the low end of the final bracket, so f(result) <= level holds.
template <typename F>
BisectionResult bisect_increasing_sup(F&& f, double level, double x_min, double x_cap,
                                      const BisectionOptions& opt = {}) {
    if (f(x_min) > level) {
        throw std::domain_error("bisect_increasing_sup: f(x_min) already above level");
    }
    double lo = x_min;           // f(lo) <= level
    double hi = std::max(2.0 * x_min, 2.0);
    int it = 0;
    while (f(hi) <= level) {
        lo = hi;
        hi *= 2.0;
        if (++it > opt.max_iterations || hi > x_cap) {
            throw numerical_error("bisect_increasing_sup: objective never exceeds level");
        }
    }
    while (it < opt.max_iterations && (hi - lo) > opt.rel_tol * std::max(lo, 1.0)) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) <= level) lo = mid; else hi = mid;
        ++it;
    }
    double f_lo = f(lo);
    if (!(f_lo <= level) || !(f(hi) > level)) {
        throw numerical_error("bisect_increasing_sup: objective not monotone across bracket");
    }
    return {lo, hi, it, f_lo};
}

}  // namespace subw
