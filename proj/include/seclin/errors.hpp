#pragma once

#include <stdexcept>
#include <string>

namespace seclin {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatches, field mismatches, invalid files,
/// out-of-range indices. CLI exit code 2.
struct StructuralError : Error {
    using Error::Error;
};

/// A secrecy criterion failed where the operation requires it to hold
/// (e.g. securing a scheme whose decoding matrix is inadmissible).
/// CLI exit code 3.
struct SecrecyError : Error {
    using Error::Error;
};

/// An audit cannot be carried out: state space too large, degenerate
/// randomness covariance, and similar. CLI exit code 4.
struct AuditError : Error {
    using Error::Error;
};

} // namespace seclin
