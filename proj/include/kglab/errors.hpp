#pragma once

#include <stdexcept>
#include <string>

namespace kglab {

/// Invalid system/solver configuration (bad species index, malformed JSON, ...).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numeric failure at run time (NaN/Inf detected, quadrature too coarse, ...).
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kglab
