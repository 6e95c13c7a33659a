// errors.hpp: exception types raised by the solvers

#pragma once

#include <stdexcept>
#include <string>

namespace synheat {

/// A linear system (or one of its blocks) is numerically singular.
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A solver produced NaN or Inf.
class NonFiniteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature did not reach the requested relative tolerance.
/// Carries the best estimate and its error bound so callers can decide.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// Time stepping failed to reach a periodic steady state, or was asked to
/// run with an unusable step size.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs violate the model invariants (see validate()).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace synheat
