#pragma once

#include <stdexcept>
#include <string>

namespace gacz {

// Error taxonomy maps onto CLI exit codes: config_error -> 3,
// convergence_error / numerical_error -> 4. Everything derives from
// gacz::error so callers can catch the whole family at once.

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad physical/solver configuration (invalid geometry, out-of-range
// parameters, malformed or unknown config keys).
struct config_error : error {
    using error::error;
};

// Iterative scheme failed to reach its tolerance within budget.
struct convergence_error : error {
    using error::error;
};

// Numerical-integrity violation (e.g. a Choi matrix with eigenvalues
// below the PSD tolerance).
struct numerical_error : error {
    using error::error;
};

// Lookup of a basis state that is not part of the basis.
struct not_found_error : error {
    using error::error;
};

// Excitation sectors above 2 are physically incomplete for three-level
// atoms and are rejected.
struct unsupported_sector_error : config_error {
    using config_error::config_error;
};

// Calibration routines: no exchange/revival found within the horizon.
struct calibration_error : error {
    using error::error;
};

} // namespace gacz
