#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace steklov {

/// Base for every error raised by the library. `code()` is a stable
/// machine-readable identifier used by the CLI's JSON diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& message) : Error("domain_error", message) {}
};

/// A derivative or cross-product order beyond the supported cap.
class UnsupportedOrderError : public Error {
public:
    explicit UnsupportedOrderError(const std::string& message)
        : Error("unsupported_order", message) {}
};

/// The supplied bracket does not enclose a sign change.
class BracketError : public Error {
public:
    explicit BracketError(const std::string& message) : Error("bracket_error", message) {}
};

/// An iterative method hit its iteration cap. Carries the best iterate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& message, double best_iterate)
        : Error("iteration_limit", message), best_(best_iterate) {}

    double best_iterate() const noexcept { return best_; }

private:
    double best_;
};

/// A caller violated a documented precondition (e.g. non-converged input).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& message)
        : Error("precondition_failed", message) {}
};

/// An integrator could not proceed (step size collapsed).
class StepUnderflowError : public Error {
public:
    explicit StepUnderflowError(const std::string& message)
        : Error("step_underflow", message) {}
};

}  // namespace steklov
