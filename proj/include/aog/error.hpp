#pragma once

#include <stdexcept>
#include <string>

namespace aog {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input document or bad parameter.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Malformed edge-list or poset document; carries the 1-based line number.
class ParseError : public InvalidInput {
public:
    ParseError(int line, const std::string& what)
        : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// An exact computation was asked for on an input beyond its size guard.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

/// A player made a move the rules forbid (non-edge, repeated query, cycle).
class IllegalMove : public Error {
public:
    using Error::Error;
};

}  // namespace aog
