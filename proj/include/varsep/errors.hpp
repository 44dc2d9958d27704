#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace varsep {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// An expression that cannot be turned into an exact polynomial.
class LoweringError : public Error {
public:
    LoweringError(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class EvalError : public Error {
public:
    using Error::Error;
};

/// Floating-point evaluation left the domain of an operation (ln of a
/// nonpositive value, division by zero, non-finite result).
class DomainError : public EvalError {
public:
    DomainError(const std::string& what, std::string subexpression)
        : EvalError(what + " in '" + subexpression + "'"), subexpression_(std::move(subexpression)) {}

    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    std::string subexpression_;
};

/// Caller broke a precondition: index out of range, mismatched registries,
/// malformed partition, bad dimensions.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Zero polynomial, or a function that vanishes on every sampled point.
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// A separation was requested that the input does not admit.
class NotSeparable : public Error {
public:
    using Error::Error;
};

/// A computed factorization failed exact re-multiplication.
class VerificationError : public Error {
public:
    using Error::Error;
};

}  // namespace varsep
