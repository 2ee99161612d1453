#pragma once

#include <stdexcept>
#include <string>

namespace tbw {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-physical or out-of-contract argument.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Parameters outside the ordering w1 <= w2 < w3 the spectrum solver handles.
class UnsupportedRegime : public Error {
public:
    using Error::Error;
};

/// Root refinement, factorization or quadrature did not produce a usable result.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// A frequency handed to the mode-shape builder does not make the boundary matrix singular.
class NotAnEigenfrequency : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// Malformed or inconsistent run configuration. Carries the offending field and, when
/// known, the 1-based source line.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message, int line = 0)
        : Error(format(field, message, line)), field_(std::move(field)), line_(line) {}

    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& field, const std::string& message, int line) {
        std::string out = "config";
        if (line > 0) out += ":" + std::to_string(line);
        if (!field.empty()) out += " [" + field + "]";
        return out + ": " + message;
    }

    std::string field_;
    int line_ = 0;
};

}  // namespace tbw
