#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace volterra {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Malformed decimal text. `position` is the 0-based index of the offending
/// character (or the string length when input ended prematurely).
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Invalid configuration: bad precision, non-divisible grid step,
/// out-of-range tolerance, unknown kernel name, and the like.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Mismatched shapes: vector/grid length disagreement, index out of range.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Evaluation requested outside the grid domain.
class ExtrapolationError : public Error {
public:
    using Error::Error;
};

/// Argument outside a function's domain (log of a non-positive value,
/// division by zero, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Result exceeded the representable exponent range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Quadrature failed to reach the requested accuracy within the refinement
/// budget. Carries the best available estimate and the achieved error
/// estimate as full-precision decimal strings.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& message, std::string best_estimate,
                  std::string error_estimate)
        : Error(message),
          best_estimate_(std::move(best_estimate)),
          error_estimate_(std::move(error_estimate)) {}
    const std::string& best_estimate() const noexcept { return best_estimate_; }
    const std::string& error_estimate() const noexcept { return error_estimate_; }

private:
    std::string best_estimate_;
    std::string error_estimate_;
};

/// Pivot collapsed during elimination. `iteration` is set when the failure
/// happened inside an iterative solve (-1 otherwise).
class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(const std::string& message, int iteration = -1)
        : Error(message), iteration_(iteration) {}
    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

/// Convergence-analysis failure (too few usable iterations above the
/// noise floor, degenerate fit window).
class DiagnosticsError : public Error {
public:
    using Error::Error;
};

}  // namespace volterra
