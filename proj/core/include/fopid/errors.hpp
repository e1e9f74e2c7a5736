#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fopid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric argument lies outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Time-domain design specification is not realisable (Mp or t_rise out of range).
class SpecError : public Error {
public:
    using Error::Error;
};

/// Optimizer, simulator or problem configuration is inconsistent.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Transfer-function algebra produced a degenerate result.
class CompositionError : public Error {
public:
    using Error::Error;
};

/// Time stepping failed. Carries the index of the offending sample.
class SimulationError : public Error {
public:
    SimulationError(const std::string& what, std::size_t step)
        : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Response metrics cannot be extracted from the given samples.
class MetricError : public Error {
public:
    using Error::Error;
};

/// Malformed external input (JSON problem files, CSV, CLI values).
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace fopid
