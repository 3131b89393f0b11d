#pragma once

#include <stdexcept>
#include <string>

namespace subw {

/// Malformed or inconsistent configuration input (CLI exit code 1).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// A solver or quadrature failed to converge (CLI exit code 3).
/// Domain violations use std::domain_error / std::invalid_argument (exit code 2).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subw
