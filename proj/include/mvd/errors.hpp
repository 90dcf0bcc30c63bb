#pragma once

#include <stdexcept>
#include <string>

namespace mvd {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed table, tree or weight file content.
class FormatError : public Error {
public:
    using Error::Error;
};

// Precondition violations: unknown attributes, wrong tuple lengths, bad family parameters.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Missing weights, or a partially bounded measure where a bounded one is required.
class MeasureError : public Error {
public:
    using Error::Error;
};

// A configured size limit would be exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace mvd
