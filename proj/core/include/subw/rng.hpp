#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace subw {

// Seed derivation and value generation are both built on the splitmix64
// finalizer. Child streams are keyed as
//     child = mix(mix(parent ^ fnv1a64(role)) ^ index)
// so that parallel generation order cannot change any stream's content.

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z += kGoldenGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    return h;
}

constexpr std::uint64_t child_seed(std::uint64_t parent, std::string_view role,
                                   std::uint64_t index) {
    return mix64(mix64(parent ^ fnv1a64(role)) ^ index);
}

/// Deterministic 64-bit stream (splitmix64). Cheap to construct; one per
/// substream, never shared across threads.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGoldenGamma;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1]; never returns 0 so that -log(u) is finite.
    double next_unit_open0() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
    }

    /// Uniform on [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1p-53; }

    /// Fair +-1.
    double next_sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

    /// Standard normal via Box-Muller; draws come in pairs.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_unit_open0();
        double u2 = next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace subw
