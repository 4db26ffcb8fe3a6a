#pragma once

#include <stdexcept>
#include <string>

namespace seqcon {

// Base for everything this library throws.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid argument values (non-positive shapes, out-of-range probabilities, NaN scores).
struct domain_error : error {
    using error::error;
};

// An iterative scheme hit its iteration cap without meeting tolerance.
struct convergence_error : error {
    using error::error;
};

// Operation not legal in the object's current state (e.g. observing a finished monitor).
struct state_error : error {
    using error::error;
};

// Inconsistent configuration (e.g. alpha + beta >= 1).
struct config_error : error {
    using error::error;
};

// Input data unusable: insufficient, degenerate, or infeasible for the requested fit.
struct data_error : error {
    using error::error;
};

// Malformed file or response payload.
struct parse_error : error {
    using error::error;
};

// File parsed fine but declares a schema version this build does not speak.
struct version_error : parse_error {
    using parse_error::parse_error;
};

} // namespace seqcon
