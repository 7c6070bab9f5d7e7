#pragma once

#include <stdexcept>
#include <string>

namespace fou {

/// Base of every error raised by the library. `exit_code()` is the status the
/// CLI returns when the error escapes a subcommand.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 3; }
};

/// A parameter lies outside the domain an operation is defined on.
class DomainError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

class CirculantEmbeddingFailed : public Error {
public:
    using Error::Error;
};

class CholeskyFailed : public Error {
public:
    using Error::Error;
};

class SchemeUnstable : public Error {
public:
    using Error::Error;
};

/// ∫X²dt is (numerically) zero so an estimator would divide by zero.
class DegeneratePath : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

class IoError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

} // namespace fou
