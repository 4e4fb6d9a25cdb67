// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace lamperti {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument sits on (or within 1e-12 of) a pole of Γ.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Argument outside the range where a function or formula is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Quadrature or iteration failed to meet its tolerance within its limits.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// An expectation that does not exist for the requested Lyapunov power.
class DivergentError : public Error {
public:
    using Error::Error;
};

/// Bracketed root search found no sign change.
class NoRootError : public Error {
public:
    using Error::Error;
};

class NotRecurrentError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// The light component cannot absorb the requested drift; `state()` is the
/// first offending position found.
class InfeasibleDrift : public Error {
public:
    InfeasibleDrift(const std::string& what, double state) : Error(what), state_(state) {}
    double state() const noexcept { return state_; }

private:
    double state_;
};

class InfeasibleWeight : public Error {
public:
    using Error::Error;
};

}  // namespace lamperti
