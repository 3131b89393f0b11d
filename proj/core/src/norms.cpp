#include "subw/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subw {

TruncationLevel::TruncationLevel(double p) : p_(p) {
    if (!(p >= 1.0)) {
        throw std::invalid_argument("TruncationLevel: p must be >= 1");
    }
}

std::size_t TruncationLevel::prefix_length(std::size_t n) const {
    if (n == 0) return 0;
    double fl = std::floor(p_);
    if (fl >= static_cast<double>(n)) return n;
    return std::max<std::size_t>(1, static_cast<std::size_t>(fl));
}

double lp_norm(std::span<const double> v, const BetaExponent& beta) {
    if (v.empty()) return 0.0;
    double m = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) throw std::invalid_argument("lp_norm: non-finite entry");
        m = std::max(m, std::abs(x));
    }
    if (beta.is_infinite() || m == 0.0) return m;
    const double b = beta.value();
    double acc = 0.0;
    for (double x : v) {
        acc += std::pow(std::abs(x) / m, b);
    }
    return m * std::pow(acc, 1.0 / b);
}

double truncated_norm(std::span<const double> v, const TruncationLevel& level,
                      const BetaExponent& beta) {
    return lp_norm(v.first(level.prefix_length(v.size())), beta);
}

}  // namespace subw
