#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kwent {

// Base of every error the library raises. Callers that only care about
// "something was wrong with the request" can catch this one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dimension outside the supported range, or vector length not 2^n.
struct SizeError : Error {
    using Error::Error;
};

// Two operands of a binary operation live on different cubes.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of the operation.
struct DomainError : Error {
    using Error::Error;
};

// A brute-force enumeration would exceed its work guard.
struct ResourceError : Error {
    using Error::Error;
};

// Input violates a structural invariant (probabilities, density mean, ...).
struct ValidationError : Error {
    using Error::Error;
};

// A proof chain was asked to run on an input that does not meet its
// independence hypothesis.
struct PreconditionError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace kwent
