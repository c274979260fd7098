// errors.hpp — exception hierarchy shared by every magnonics module.

#pragma once

#include <stdexcept>
#include <string>

namespace magnonics {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Drift matrix has an eigenvalue with non-negative real part; no steady state.
struct StabilityError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    using Error::Error;
};

// Malformed matrix input (odd dimension, not square, not symmetric).
struct ShapeError : Error {
    using Error::Error;
};

struct ArgumentError : Error {
    using Error::Error;
};

// Input lies outside the states a closed-form measure is defined for.
struct DomainError : Error {
    using Error::Error;
};

// Unknown sweep parameter, figure name, or malformed axis.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace magnonics
