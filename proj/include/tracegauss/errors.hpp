#pragma once
#include <stdexcept>
#include <string>

namespace tracegauss {

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct precision_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct size_cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct truncation_cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two independent evaluation routes disagreed beyond their combined error
// budget. This always indicates a bug, never a tolerance issue.
struct route_mismatch : std::logic_error {
    using std::logic_error::logic_error;
};

struct unsupported_combination : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace tracegauss
