#pragma once

#include <stdexcept>
#include <string>

namespace sclab {

/// Base class of every error the library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

/// The probe (the density target) has norm below the zero cutoff.
struct ZeroProbeError : Error {
    using Error::Error;
};

/// A vector that must be nonzero (candidate, sample, pair element) is zero.
struct ZeroVectorError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

struct InvalidScalarError : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct NotInvertibleError : Error {
    using Error::Error;
};

struct PairingError : Error {
    using Error::Error;
};

struct InvalidBallError : Error {
    using Error::Error;
};

struct NotALimitError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct InvalidParameterError : Error {
    using Error::Error;
};

struct EmptyTailError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace sclab
