#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kc {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A broken internal invariant (a bug, not a user error).
class InternalError : public Error {
public:
    using Error::Error;
};

// Syntax or structural error in an input file.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_ = 0;
};

} // namespace kc
