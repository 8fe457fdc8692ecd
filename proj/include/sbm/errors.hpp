// Exception types raised by the solver

#pragma once

#include <stdexcept>
#include <string>

namespace sbm {

// Parameter set violates a model invariant. `field()` names the offending key.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Iterative procedure neither converged nor reached a recognised terminal state.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bracket or boundary search failed.
class SearchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Several candidate roots/boundaries where exactly one was expected.
class AmbiguityError : public SearchError {
public:
    using SearchError::SearchError;
};

// Quadrature could not meet its tolerance. Carries the achieved estimate.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double value, double error)
        : std::runtime_error(what), value_(value), error_(error) {}
    double value() const noexcept { return value_; }
    double error() const noexcept { return error_; }

private:
    double value_;
    double error_;
};

} // namespace sbm
