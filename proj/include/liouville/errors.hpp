#pragma once

#include <stdexcept>
#include <string>

namespace liouville {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A linear system has no unique solution.
struct SingularMatrix : Error {
    using Error::Error;
};

/// Operand shapes do not match the ambient dimension.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// A matrix fails the symplectic Lie algebra membership test A† = -A.
struct NotInSp : Error {
    using Error::Error;
};

/// An operation was asked for a generator square class it does not support.
struct WrongClass : Error {
    using Error::Error;
};

/// Floating-point classification matched more than one square class.
struct AmbiguousClass : Error {
    using Error::Error;
};

/// The base diffeomorphism has a singular derivative at the requested point.
struct SingularJacobian : Error {
    using Error::Error;
};

/// A map claimed to preserve the plus subspace leaks into the minus subspace.
struct RestrictionEscapes : Error {
    using Error::Error;
};

/// A floating-point value left the finite range (NaN or infinity).
struct NonFiniteValue : Error {
    using Error::Error;
};

/// Bad user-facing input (malformed JSON, invalid configuration, ...).
struct InvalidInput : Error {
    using Error::Error;
};

}  // namespace liouville
