#pragma once

/**
 * @file errors.hpp
 * @brief Exception hierarchy shared by every module.
 *
 * All failures are reported by throwing one of these types. The CLI maps
 * ShapeError and DomainError to exit code 2 and SingularError to exit code 3.
 */

#include <stdexcept>
#include <string>

namespace ff {

/// Base class of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dimensions, orders or tuple lengths do not match.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A matrix that must be inverted is singular or too badly conditioned.
class SingularError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the domain of an operation (pole, bad order, bad type).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two independent computations that must agree did not.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace ff
