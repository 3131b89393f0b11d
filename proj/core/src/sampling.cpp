#include "subw/sampling.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace subw {

namespace {

constexpr const char* kGeneratorId = "splitmix64+inverse-transform";
constexpr const char* kGaussianId = "splitmix64+box-muller";

void check_count(std::size_t count) {
    if (count == 0) throw std::invalid_argument("sample: count must be >= 1");
}

}  // namespace

double draw_abs_z(Stream& stream, double alpha, double l) {
    double s = -std::log(stream.next_unit_open0());
    double v = std::sqrt(s);
    if (l > 0.0) v = std::max(v, l * std::pow(s, 1.0 / alpha));
    return v;
}

double draw_z(Stream& stream, double alpha, double l) {
    double v = draw_abs_z(stream, alpha, l);
    return stream.next_sign() * v;
}

SampleBatch sample_y(std::size_t count, std::uint64_t seed) {
    check_count(count);
    SampleBatch batch;
    batch.seed = seed;
    batch.generator_id = kGeneratorId;
    batch.spec = "law=Y";
    batch.values.resize(count);
    const std::uint64_t parent = child_seed(seed, "Y", 0);
    for (std::size_t k = 0; k < count; ++k) {
        Stream stream(child_seed(parent, "draw", k));
        batch.values[k] = draw_z(stream, 1.0, 0.0);
    }
    return batch;
}

SampleBatch sample_z(double alpha, double l, std::size_t count, std::uint64_t seed) {
    check_count(count);
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("sample_z: alpha must be positive and finite");
    }
    if (!(l >= 0.0) || !std::isfinite(l)) {
        throw std::invalid_argument("sample_z: scale must be nonnegative and finite");
    }
    SampleBatch batch;
    batch.seed = seed;
    batch.generator_id = kGeneratorId;
    std::ostringstream spec;
    spec << "law=Z;alpha=" << alpha << ";l=" << l;
    batch.spec = spec.str();
    batch.values.resize(count);
    const std::uint64_t parent = child_seed(seed, "Z", 0);
    for (std::size_t k = 0; k < count; ++k) {
        Stream stream(child_seed(parent, "draw", k));
        batch.values[k] = draw_z(stream, alpha, l);
    }
    return batch;
}

SampleBatch sample_zstar(const CanonicalProblem& problem, std::size_t reps,
                         std::uint64_t seed) {
    check_count(reps);
    SampleBatch batch;
    batch.seed = seed;
    batch.generator_id = kGeneratorId;
    std::ostringstream spec;
    spec << "law=Zstar;alpha=" << problem.alpha() << ";n=" << problem.size();
    batch.spec = spec.str();
    batch.values.resize(reps);
    const auto a = problem.weights();
    const auto l = problem.scales();
    for (std::size_t r = 0; r < reps; ++r) {
        const std::uint64_t rep_seed = child_seed(seed, "zstar", r);
        double acc = 0.0;
        for (std::size_t i = 0; i < problem.size(); ++i) {
            if (a[i] == 0.0) continue;
            Stream stream(child_seed(rep_seed, "term", i));
            acc += a[i] * draw_z(stream, problem.alpha(), l[i]);
        }
        batch.values[r] = acc;
    }
    return batch;
}

GaussianCube sample_gaussian_groups(std::size_t m, std::size_t n, std::size_t q,
                                    std::uint64_t seed) {
    if (m == 0 || n == 0 || q == 0) {
        throw std::invalid_argument("sample_gaussian_groups: m, n, q must be >= 1");
    }
    GaussianCube cube;
    cube.groups = m;
    cube.observations = n;
    cube.dimension = q;
    cube.seed = seed;
    cube.generator_id = kGaussianId;
    cube.values.resize(m * n * q);
    for (std::size_t l = 0; l < m; ++l) {
        const std::uint64_t group_seed = child_seed(seed, "gauss", l);
        for (std::size_t k = 0; k < n; ++k) {
            Stream stream(child_seed(group_seed, "obs", k));
            double* row = cube.values.data() + (l * n + k) * q;
            for (std::size_t j = 0; j < q; ++j) row[j] = stream.next_normal();
        }
    }
    return cube;
}

}  // namespace subw
