#pragma once

#include <stdexcept>
#include <string>

namespace crossext {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input data (bad shapes, failed preconditions, parse errors).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Numerical-quality failure (rank degeneracy, rounding gate, non-convergence).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Eigenvalue clusters too close to separate; callers retry with a new random element.
class UnsplittableError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Search exceeded its time budget; result is undecided rather than negative.
class TimeoutError : public Error {
public:
    using Error::Error;
};

class SizeBoundError : public Error {
public:
    using Error::Error;
};

} // namespace crossext
