#pragma once

#include <stdexcept>
#include <string>

namespace wmark {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input data violates a precondition (sizes, ranges, capacity, malformed values).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// File could not be read, decoded or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace wmark
