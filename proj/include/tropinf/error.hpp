#pragma once

#include <stdexcept>
#include <string>

namespace tropinf {

// Base for everything the library throws on bad input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int col)
        : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

class TypeError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// Search ran past its configured resource limit.
class ResourceExhausted : public Error {
public:
    using Error::Error;
};

// Broken internal invariant; the CLI maps this to exit code 2.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace tropinf
