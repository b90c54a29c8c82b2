#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quantasp {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed .aspq input. Carries a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg)
        , line_(line)
        , column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A program violates a structural requirement (non-normal rule, bad index, ...).
class ProgramError : public Error {
public:
    using Error::Error;
};

/// A non-tight SCC exceeded the loop-formula enumeration bound.
class LoopBoundError : public Error {
public:
    using Error::Error;
};

/// Guess&Check preconditions violated.
class GcError : public Error {
public:
    using Error::Error;
};

/// Brute-force engines refuse inputs above their configured size.
class BudgetError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

} // namespace quantasp
