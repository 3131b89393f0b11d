#pragma once

#include <span>

#include "subw/problem.hpp"

namespace subw {

/// Index-truncation level for the prefix norms ||(v_i : i <= p)||. Indices are
/// integers, so "i <= p" keeps the first floor(p) entries (at least one).
class TruncationLevel {
public:
    explicit TruncationLevel(double p);
    double p() const { return p_; }
    /// Number of leading entries kept from a vector of length n.
    std::size_t prefix_length(std::size_t n) const;

private:
    double p_;
};

/// (sum |v_i|^beta)^(1/beta); exact max for infinite beta. Rescales by the
/// largest magnitude before powering so large beta cannot overflow.
/// Empty input is 0 by convention.
double lp_norm(std::span<const double> v, const BetaExponent& beta);

/// lp_norm of the prefix (v_1, ..., v_{min(floor(p), n)}). The caller supplies
/// v in canonical order.
double truncated_norm(std::span<const double> v, const TruncationLevel& level,
                      const BetaExponent& beta);

}  // namespace subw
