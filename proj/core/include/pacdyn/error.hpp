#pragma once

#include <stdexcept>
#include <string>

namespace pacdyn {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Grid resolution outside the supported range (N < 4).
class InvalidGridError : public Error {
public:
    using Error::Error;
};

/// Array length does not match the grid it is used with.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Malformed or out-of-range configuration value. The message names the key.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A diagnostic metric cannot be evaluated on the given field
/// (e.g. there is no zero level set to measure).
class MetricUndefinedError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace pacdyn
