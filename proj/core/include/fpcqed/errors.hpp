#pragma once

#include <stdexcept>
#include <string>

namespace fpcqed {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user input: parameter out of domain, malformed config, bad grid.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// |1 − r̃₁r̃₂| fell below the pole threshold.
class PoleError : public Error {
public:
    PoleError(const std::string& what, int family = -1) : Error(what), family_(family) {}
    /// -1 for the guided (B) family, otherwise the index into extra_families.
    int family() const noexcept { return family_; }

private:
    int family_;
};

class FitError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class TruncationError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class PropagationError : public Error {
public:
    PropagationError(const std::string& what, double time_ps) : Error(what), time_(time_ps) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// A correlator did not decay inside its time window, or a lookup left a tabulated range.
class WindowError : public Error {
public:
    using Error::Error;
};

/// A quantity is undefined for the given input (zero power, zero linewidth).
class DegenerateError : public Error {
public:
    using Error::Error;
};

}  // namespace fpcqed
