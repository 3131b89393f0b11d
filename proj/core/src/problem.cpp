#include "subw/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace subw {

BetaExponent BetaExponent::finite(double value) {
    if (!(value >= 1.0) || !std::isfinite(value)) {
        throw std::invalid_argument("BetaExponent: finite beta must be in [1, inf)");
    }
    return BetaExponent(false, value);
}

double BetaExponent::value() const {
    if (infinite_) throw std::logic_error("BetaExponent: value() on infinite beta");
    return value_;
}

BetaExponent beta_of(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("beta_of: alpha must be a positive finite real");
    }
    if (alpha <= 1.0) return BetaExponent::infinite();
    return BetaExponent::finite(alpha / (alpha - 1.0));
}

std::vector<double> lbar(std::span<const double> scales) {
    std::vector<double> out(scales.size());
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] >= 0.0) || !std::isfinite(scales[i])) {
            throw std::invalid_argument("lbar: scales must be nonnegative finite reals");
        }
        out[i] = std::max(1.0, scales[i]);
    }
    return out;
}

WeightedSumProblem::WeightedSumProblem(double alpha, std::vector<double> weights,
                                       std::vector<double> scales)
    : alpha_(alpha), weights_(std::move(weights)), scales_(std::move(scales)) {
    if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) {
        throw std::invalid_argument("WeightedSumProblem: alpha must be positive and finite");
    }
    if (weights_.empty()) {
        throw std::invalid_argument("WeightedSumProblem: need at least one summand");
    }
    if (weights_.size() != scales_.size()) {
        throw std::invalid_argument(
            "WeightedSumProblem: weights and scales length mismatch (" +
            std::to_string(weights_.size()) + " vs " + std::to_string(scales_.size()) + ")");
    }
    for (double a : weights_) {
        if (!(a >= 0.0) || !std::isfinite(a)) {
            throw std::invalid_argument("WeightedSumProblem: weights must be nonnegative finite");
        }
    }
    for (double l : scales_) {
        if (!(l >= 0.0) || !std::isfinite(l)) {
            throw std::invalid_argument("WeightedSumProblem: scales must be nonnegative finite");
        }
    }
}

CanonicalProblem::CanonicalProblem(WeightedSumProblem p, std::vector<std::size_t> order)
    : problem_(std::move(p)), order_(std::move(order)) {
    a_l_.resize(problem_.size());
    a_lbar_.resize(problem_.size());
    for (std::size_t i = 0; i < problem_.size(); ++i) {
        double a = problem_.weights()[i];
        double l = problem_.scales()[i];
        a_l_[i] = a * l;
        a_lbar_[i] = a * std::max(1.0, l);
    }
}

CanonicalProblem canonicalize(const WeightedSumProblem& problem) {
    const std::size_t n = problem.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key = [&](std::size_t i) {
        return problem.weights()[i] * std::max(1.0, problem.scales()[i]);
    };
    // ties keep original index order, so repeated canonicalization is stable
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return key(i) > key(j); });
    std::vector<double> a(n), l(n);
    for (std::size_t k = 0; k < n; ++k) {
        a[k] = problem.weights()[order[k]];
        l[k] = problem.scales()[order[k]];
    }
    return CanonicalProblem(WeightedSumProblem(problem.alpha(), std::move(a), std::move(l)),
                            std::move(order));
}

}  // namespace subw
