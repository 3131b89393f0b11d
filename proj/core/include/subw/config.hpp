#pragma once

#include <string>

#include "subw/problem.hpp"

namespace subw {

/// Parses a problem definition of the form
///   {"alpha": 1.0, "weights": [1, 1], "scales": [0.5, 2]}
/// Unknown keys are errors, not warnings; NaN/Inf are rejected by the JSON
/// grammar. Throws config_error with field diagnostics.
WeightedSumProblem parse_problem_json(const std::string& text);

/// Reads and parses a problem config file; parse errors carry position info.
WeightedSumProblem load_problem_file(const std::string& path);

}  // namespace subw
