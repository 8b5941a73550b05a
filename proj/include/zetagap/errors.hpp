#pragma once

#include <stdexcept>
#include <string>

namespace zetagap {

// Thrown when the second-moment denominator form comes out non-positive.
// The denominator is a second moment, so this always indicates either an
// inadmissible input or an implementation fault upstream.
class DegenerateDenominator : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Series cap reached before meeting the truncation tolerance.
class TruncationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Cholesky factorization hit a non-positive pivot.
class NotPositiveDefinite : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// No failing c found while expanding the bisection bracket.
class BracketFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotPrime : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownConstant : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    explicit ParseError(const std::string& what) : std::runtime_error(what), line_(0) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class OrderError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OutOfRange : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace zetagap
