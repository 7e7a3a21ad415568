#pragma once

#include <stdexcept>
#include <string>

namespace qsw {

// Base type for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape or subsystem-dimension mismatch.
struct DimensionError : Error {
    using Error::Error;
};

// Input violates a physical or structural contract (non-Hermitian state,
// incomplete Kraus set, bad parameter range, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Iterative kernel failed to converge.
struct NumericalError : Error {
    using Error::Error;
};

// Matrix expected to be positive semidefinite has a genuinely negative eigenvalue.
struct NotPsdError : ValidationError {
    using ValidationError::ValidationError;
};

// Malformed or invalid configuration document.
struct ConfigError : Error {
    using Error::Error;
};

// Filesystem failure, reported with the offending path.
struct IoError : Error {
    using Error::Error;
};

} // namespace qsw
