// Exception hierarchy for the solver core. The C API maps each class to a
// status code; anything escaping these classes is reported as internal.
#pragma once

#include <stdexcept>
#include <string>

namespace mfc {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Precondition or argument violation: bad value, wrong topology, shape mismatch.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Filesystem problem: missing or unreadable file, failed write.
class IoError : public Error {
public:
    using Error::Error;
};

// Malformed text input: geometry file, config file, CSV field.
class ParseError : public Error {
public:
    using Error::Error;
};

// Time step too large for the explicit transport part.
class CflError : public Error {
public:
    using Error::Error;
};

// Nonfinite or inconsistent numerical result.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace mfc
