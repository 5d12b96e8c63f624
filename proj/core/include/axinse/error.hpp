#pragma once

#include <stdexcept>
#include <string>

namespace axinse {

/// Base error for all failures raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A requested space-time region leaves the sampled domain.
class OutOfDomainError : public Error {
public:
    using Error::Error;
};

/// Invalid argument or precondition violation.
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// An iterative solve failed to reach its residual target.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Config file syntax or semantic error; carries the offending line when known.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_number(line) {}
    int line_number = 0;
};

} // namespace axinse
