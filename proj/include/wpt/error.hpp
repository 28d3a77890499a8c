#pragma once

#include <stdexcept>
#include <string>

namespace wpt {

/// Base of every error raised by the simulator.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Mixing angle requested at κ = Δ = 0.
class UndefinedAngle : public Error {
public:
    using Error::Error;
};

/// Δ² + 4κ² vanished while evaluating counterdiabatic terms.
class SingularSchedule : public Error {
public:
    using Error::Error;
};

class InvalidState : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class UndefinedEfficiency : public Error {
public:
    using Error::Error;
};

/// Step size underflowed; `time()` is where the integrator gave up.
class StiffnessError : public Error {
public:
    StiffnessError(const std::string& what, double t) : Error(what), time_(t) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// A state invariant (positivity, trace bound) broke by more than the tolerance.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double t) : Error(what), time_(t) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Config problem; `path()` is the dotted field path, e.g. "schedule.t0".
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& what)
        : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace wpt
