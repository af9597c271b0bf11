#pragma once

#include <stdexcept>
#include <string>

namespace swarmorbit {

// Input outside the mathematical domain of a function (non-finite angle,
// non-positive distance, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The path gradient vanishes (query at the centre of a circle/ellipse).
class DegenerateGradientError : public DomainError {
public:
    using DomainError::DomainError;
};

// The guiding field has (numerically) zero norm, so no direction exists.
class DegenerateFieldError : public DomainError {
public:
    using DomainError::DomainError;
};

// Closed-form safety correction requested with |Lg_h_i| ~ 0.
class SingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error(what), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace swarmorbit
