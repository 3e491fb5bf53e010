#pragma once

#include <stdexcept>
#include <string>

namespace dropsim {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A caller-supplied parameter violates a precondition.
class InvalidParameterError : public Error {
public:
    InvalidParameterError(const std::string& what, std::string field = {})
        : Error(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// The generating curve is unusable: zero-length elements, self-intersection,
/// nodes off the axis where they must sit on it.
class DegenerateGeometryError : public Error {
public:
    using Error::Error;
};

/// A kernel was evaluated on (or too close to) its own singular point.
class SingularKernelError : public Error {
public:
    using Error::Error;
};

/// Dense factorization failed; almost always a degenerate mesh upstream.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// The power-law fit did not converge or produced an inadmissible blow-up time.
class FitFailureError : public Error {
public:
    using Error::Error;
};

/// Fewer nodes than required inside a fitting window.
class InsufficientNodesError : public Error {
public:
    using Error::Error;
};

}  // namespace dropsim
