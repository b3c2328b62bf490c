#pragma once

#include <stdexcept>
#include <string>

namespace zetalab {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition on the arguments was violated.
class ParameterError : public Error {
public:
    using Error::Error;
};

// The point lies outside the region where the quantity is defined or computed.
class DomainError : public Error {
public:
    using Error::Error;
};

// An iteration cap or refinement check was exceeded.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

// A resource guard (memory, evaluation budget) would be exceeded.
class CapacityError : public Error {
public:
    using Error::Error;
};

// A file could not be written or read.
class IoError : public Error {
public:
    using Error::Error;
};

inline void require(bool condition, const std::string& what) {
    if (!condition) throw ParameterError(what);
}

}  // namespace zetalab
