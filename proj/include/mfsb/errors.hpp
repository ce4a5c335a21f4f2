#pragma once

#include <stdexcept>
#include <string>

namespace mfsb {

// Enumeration depth above the configured cap.
struct depth_cap_error : std::runtime_error {
    explicit depth_cap_error(const std::string& what) : std::runtime_error(what) {}
};

// Iteration caps, tail bounds or step underflow in the numerics.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mfsb
