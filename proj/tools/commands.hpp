#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace subwcli {

struct GlobalOptions {
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string out_dir = ".";
    std::string format = "json";
};

struct BoundsOptions {
    std::string config_path;
    std::string op;
    double p = 2.0;
    double t = 0.0;
    double constant_c = 1.0;
    std::string side = "upper";
};

struct OrliczOptions {
    std::string op = "gbo_z";
    double alpha = 1.0;
    double l = 0.0;
    double p = 2.0;
    std::string config_path;
};

struct SampleOptions {
    std::string law = "Z";
    double alpha = 1.0;
    double l = 0.0;
    std::size_t count = 1;
    std::size_t m = 1, n = 1, q = 1;
    std::string config_path;
};

struct VerifyOptions {
    std::string suite;
    std::size_t reps = 0;  ///< 0 = suite default
};

struct CovappOptions {
    std::string config_path;
    std::size_t m = 0, n = 0, q = 0, reps = 0;
    std::vector<double> nu_grid;
};

int run_bounds(const GlobalOptions& g, const BoundsOptions& opt);
int run_orlicz(const GlobalOptions& g, const OrliczOptions& opt);
int run_sample(const GlobalOptions& g, const SampleOptions& opt);
int run_verify(const GlobalOptions& g, const VerifyOptions& opt);
int run_covapp(const GlobalOptions& g, const CovappOptions& opt);

}  // namespace subwcli
