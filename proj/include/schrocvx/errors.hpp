#pragma once

#include <stdexcept>
#include <string>

namespace schrocvx {

// Configuration and usage errors (bad scenario files, unknown check names,
// malformed weights). The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownCheckError : ConfigError {
    using ConfigError::ConfigError;
};

// A weight kind that the requested norm path cannot evaluate
// (e.g. radial power weight on a non-radial Gaussian).
struct UnsupportedWeightError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical guard violations. The CLI maps these to exit code 3.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sample(): the field does not decay below the aliasing threshold at the
// box boundary.
struct AliasingGuardError : GuardError {
    using GuardError::GuardError;
};

// grid_weighted_log_norm(): the weighted integrand at the box boundary
// exceeds the tail threshold relative to its maximum.
struct TailDominanceError : GuardError {
    using GuardError::GuardError;
};

// Two-endpoint interpolation check whose right-hand side norm is infinite
// outside the documented vacuous regime.
struct EndpointInfiniteError : GuardError {
    using GuardError::GuardError;
};

// Adaptive quadrature failed to reach the requested tolerance.
struct QuadratureError : GuardError {
    using GuardError::GuardError;
};

// Adaptive ODE integration drove the step size below representable range.
struct StepSizeUnderflowError : GuardError {
    using GuardError::GuardError;
};

}  // namespace schrocvx
