#pragma once

#include <stdexcept>
#include <string>

namespace glab {

// Bad arguments or points outside their space.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Structural problems found while checking a constructed object.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Node caps and scan budgets.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace glab
