#pragma once

#include <stdexcept>
#include <string>

namespace tripart {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operator or state of the wrong size for the space it is used on.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Physical parameter outside its allowed range (negative rate, kappa <= 0).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Iterative procedure or residual check did not meet its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// The stationary manifold of the Liouvillian is more than one-dimensional.
class NonUniqueSteadyStateError : public Error {
public:
    using Error::Error;
};

/// A quantity that must hold by construction (Hermiticity, PSD) is violated
/// beyond tolerance. Usually points at an assembly bug.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Invalid sweep grid handed to an analysis routine.
class SweepError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public Error {
public:
    IoError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace tripart
