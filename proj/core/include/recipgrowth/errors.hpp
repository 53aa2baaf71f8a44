#pragma once

#include <stdexcept>
#include <string>

namespace recipgrowth {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (CSV syntax, unparsable numbers, duplicate years).
/// Carries the 1-based line number of the offending input line when known,
/// 0 otherwise.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& message, long line = 0)
        : Error(line > 0 ? message + " (line " + std::to_string(line) + ")" : message),
          line_(line) {}

    long line() const noexcept { return line_; }

private:
    long line_;
};

/// A caller-supplied argument is invalid (bad window bounds, negative
/// thresholds, out-of-range indices, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Input data violates a mathematical precondition of the requested
/// operation (nonpositive values where positivity is required, and so on).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Fewer data points than the operation needs.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// A name lookup failed (unknown bundled dataset or case study).
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Evaluation was requested at or past the model's finite-time singularity.
class BeyondSingularityError : public Error {
public:
    using Error::Error;
};

/// The regression design matrix is singular (for example, zero spread in
/// the predictor), so no coefficients exist.
class DegenerateDesignError : public Error {
public:
    using Error::Error;
};

/// A ratio whose denominator vanishes at the requested point.
class UndefinedRatioError : public Error {
public:
    using Error::Error;
};

} // namespace recipgrowth
