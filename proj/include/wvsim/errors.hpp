#pragma once

#include <stdexcept>
#include <string>

namespace wvsim {

// Thrown when a state has (numerically) zero norm and cannot be normalized.
struct undefined_state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when |<post|pre>|^2 falls below the orthogonality threshold and the
// weak value is undefined.
struct orthogonal_postselection_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requesting an operator (or pipeline step) a model does not provide.
struct unsupported_model_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fringe fit on an underdetermined or degenerate scan.
struct fit_failure_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Asymmetry formed from counts with a nonpositive denominator.
struct no_signal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// |r_z| >= 1: the imaginary part is unmeasurably large at this coupling.
struct atanh_divergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace wvsim
