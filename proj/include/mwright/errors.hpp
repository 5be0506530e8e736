#pragma once

#include <stdexcept>
#include <string>

namespace mwright {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Gamma function evaluated at a non-positive integer.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A series or iteration failed to reach its tolerance.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// Too few usable observations for the requested estimate.
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// A zero observation reached a log transform with exclusion disabled.
class ZeroObservation : public Error {
public:
    using Error::Error;
};

/// Unreadable or malformed input (files, CSV cells, flags).
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace mwright
