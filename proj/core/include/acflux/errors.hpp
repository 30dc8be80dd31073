// errors.hpp — exception types raised by the acflux library.

#pragma once

#include <stdexcept>
#include <string>

namespace acflux {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid physical scenario or numerical policy.
struct InvalidParams : Error {
    using Error::Error;
};

// A Bessel/harmonic series whose last retained term exceeds the tolerance.
struct TruncationUnconverged : Error {
    using Error::Error;
};

struct QuadratureFailure : Error {
    using Error::Error;
};

// Two computational routes for the same observable disagree.
struct PathMismatch : Error {
    using Error::Error;
};

// Harmonic tables requested for a drive ratio V_ac/(hbar Omega) too large for
// the double sideband sums.
struct AlphaTooLarge : Error {
    using Error::Error;
};

struct DegenerateFit : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace acflux
