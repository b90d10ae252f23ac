#pragma once

#include <stdexcept>
#include <string>

namespace glq {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad arguments on the user-facing surface (CLI, config).
class UsageError : public Error {
public:
    using Error::Error;
};

class NonPrimeError : public Error {
public:
    using Error::Error;
};

/// Requested object is outside the supported size envelope.
class EnvelopeExceededError : public Error {
public:
    using Error::Error;
};

class TooLargeError : public EnvelopeExceededError {
public:
    using EnvelopeExceededError::EnvelopeExceededError;
};

class NotMonicError : public Error {
public:
    using Error::Error;
};

class NotUnipotentError : public Error {
public:
    using Error::Error;
};

class NotGenericError : public Error {
public:
    using Error::Error;
};

class CompositionMismatchError : public Error {
public:
    using Error::Error;
};

/// A numeric quantity that must be an integer failed the integrality check.
class NonIntegralError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A cuspidal representation matched zero or more than one regular
/// Frobenius orbit on its elliptic classes.
class AmbiguousOrbitError : public Error {
public:
    using Error::Error;
};

class OrbitUnidentifiedError : public Error {
public:
    using Error::Error;
};

class UnknownTheoremError : public Error {
public:
    using Error::Error;
};

/// Violation of a mathematical fact the engine relies on.  This is never
/// expected to fire; it indicates an implementation bug (or a falsified
/// theorem, which would be news).
class InternalCheckError : public Error {
public:
    using Error::Error;
};

}  // namespace glq
