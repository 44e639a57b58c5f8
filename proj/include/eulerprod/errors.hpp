#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eulerprod {

// Precondition on a value's mathematical domain failed (ln of a
// non-positive number, log of a series with constant term != 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ValuationError : public DomainError {
public:
    using DomainError::DomainError;
};

class ZeroDivisor : public DomainError {
public:
    using DomainError::DomainError;
};

class DivideByZero : public DomainError {
public:
    using DomainError::DomainError;
};

class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// The evaluation method is not applicable with the requested parameters.
class PlanError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A function handed to the evaluator is not admissible (f(0) != 1 or f'(0) != 0).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnknownConstant : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A value computed by the library violated a proven bound.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " at offset " + std::to_string(offset)),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace eulerprod
