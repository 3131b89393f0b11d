#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace subw {

/// The ell_beta exponent attached to a tail order alpha. beta = alpha/(alpha-1)
/// for alpha > 1; for alpha <= 1 the exponent is infinite and kept as an exact
/// sentinel, never a large float, so the max-norm stays a true max.
class BetaExponent {
public:
    static BetaExponent infinite() { return BetaExponent(true, 0.0); }
    static BetaExponent finite(double value);

    bool is_infinite() const { return infinite_; }
    /// Only valid when finite.
    double value() const;

private:
    BetaExponent(bool inf, double v) : infinite_(inf), value_(v) {}
    bool infinite_;
    double value_;
};

/// beta(alpha): alpha/(alpha-1) for alpha > 1, infinite for alpha <= 1.
BetaExponent beta_of(double alpha);

/// Elementwise max{1, L_i}.
std::vector<double> lbar(std::span<const double> scales);

/// A weighted sum X* = sum_i a_i X_i of independent mean-zero variables,
/// X_i sub-Weibull of order alpha with tail scale L_i and unit generalized
/// Orlicz norm. Weights and scales are validated on construction; ordering is
/// handled separately by canonicalize().
class WeightedSumProblem {
public:
    WeightedSumProblem(double alpha, std::vector<double> weights,
                       std::vector<double> scales);

    double alpha() const { return alpha_; }
    std::size_t size() const { return weights_.size(); }
    std::span<const double> weights() const { return weights_; }
    std::span<const double> scales() const { return scales_; }
    BetaExponent beta() const { return beta_of(alpha_); }

private:
    double alpha_;
    std::vector<double> weights_;
    std::vector<double> scales_;
};

/// A problem whose (a_i, L_i) pairs have been jointly permuted so that
/// a_i * max{1, L_i} is nonincreasing (stable in the original index on ties).
/// This is the ordering every rate formula assumes.
class CanonicalProblem {
public:
    const WeightedSumProblem& problem() const { return problem_; }
    /// order()[k] is the original index that moved to position k.
    std::span<const std::size_t> order() const { return order_; }

    double alpha() const { return problem_.alpha(); }
    std::size_t size() const { return problem_.size(); }
    std::span<const double> weights() const { return problem_.weights(); }
    std::span<const double> scales() const { return problem_.scales(); }
    BetaExponent beta() const { return problem_.beta(); }

    /// (a_i L_i) and (a_i max{1, L_i}) in canonical order.
    const std::vector<double>& weighted_scales() const { return a_l_; }
    const std::vector<double>& weighted_lbar() const { return a_lbar_; }

private:
    friend CanonicalProblem canonicalize(const WeightedSumProblem&);
    CanonicalProblem(WeightedSumProblem p, std::vector<std::size_t> order);

    WeightedSumProblem problem_;
    std::vector<std::size_t> order_;
    std::vector<double> a_l_;
    std::vector<double> a_lbar_;
};

CanonicalProblem canonicalize(const WeightedSumProblem& problem);

}  // namespace subw
