#pragma once

#include <stdexcept>
#include <string>

namespace uniprior {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed instance or code document. Line and column are 1-based; zero
// when the failure is structural rather than lexical.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0, int column = 0)
        : Error(line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                               std::to_string(column) + ")"
                         : what),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

// An operation was called on an input outside its contract.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A code references a message the sender does not hold, or an out-of-range bit.
class MalformedCode : public Error {
public:
    using Error::Error;
};

// A search or enumeration limit was hit before the result was complete.
class CapExceeded : public Error {
public:
    using Error::Error;
};

} // namespace uniprior
