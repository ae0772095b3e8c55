#pragma once

#include <stdexcept>
#include <string>

namespace zk {

// Base of every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class WeightOverflow : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class DegenerateSeries : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Raised when a modal coefficient leaves the admissible range during time stepping.
class BlowUp : public Error {
public:
    BlowUp(double time, double magnitude)
        : Error("blow-up at t=" + std::to_string(time) + " (|coefficient| = " + std::to_string(magnitude) + ")"),
          time_(time), magnitude_(magnitude) {}

    double time() const noexcept { return time_; }
    double magnitude() const noexcept { return magnitude_; }

private:
    double time_;
    double magnitude_;
};

/// A smallness or decay gate failed for the supplied initial data.
class PreconditionViolation : public Error {
public:
    PreconditionViolation(std::string gate, const std::string& what)
        : Error(what), gate_(std::move(gate)) {}

    const std::string& gate() const noexcept { return gate_; }

private:
    std::string gate_;
};

}  // namespace zk
