#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subw/problem.hpp"
#include "subw/rng.hpp"

namespace subw {

/// A seeded i.i.d. batch with full generation provenance. Re-running with the
/// same seed and spec reproduces the values bit-exactly.
struct SampleBatch {
    std::vector<double> values;
    std::uint64_t seed = 0;
    std::string generator_id;
    std::string spec;
};

/// |Y| = sqrt(-ln U), U uniform on (0,1], with an independent fair sign;
/// Pr[|Y| >= t] = exp(-t^2).
SampleBatch sample_y(std::size_t count, std::uint64_t seed);

/// |Z| = max{sqrt(s), l s^(1/alpha)} with s = -ln U; inverts the survival
/// function exp(-min{t^2, (t/l)^alpha}) exactly. l = 0 reduces to Y.
SampleBatch sample_z(double alpha, double l, std::size_t count, std::uint64_t seed);

/// Single draw used by the batch samplers and by verify-side streaming.
double draw_abs_z(Stream& stream, double alpha, double l);
double draw_z(Stream& stream, double alpha, double l);

/// reps i.i.d. realizations of Z* = sum_i a_i Z_i; each realization r draws
/// summand i from the substream keyed by (seed, "zstar" r, "term" i), so the
/// result does not depend on generation order.
SampleBatch sample_zstar(const CanonicalProblem& problem, std::size_t reps,
                         std::uint64_t seed);

/// m groups x n observations x q dimensions of independent standard normals.
struct GaussianCube {
    std::size_t groups = 0;        ///< m
    std::size_t observations = 0;  ///< n per group
    std::size_t dimension = 0;     ///< q
    std::vector<double> values;    ///< ((l*n)+k)*q + j
    std::uint64_t seed = 0;
    std::string generator_id;

    double at(std::size_t l, std::size_t k, std::size_t j) const {
        return values[(l * observations + k) * dimension + j];
    }
    const double* row(std::size_t l, std::size_t k) const {
        return values.data() + (l * observations + k) * dimension;
    }
};

GaussianCube sample_gaussian_groups(std::size_t m, std::size_t n, std::size_t q,
                                    std::uint64_t seed);

}  // namespace subw
