#pragma once

#include <stdexcept>
#include <string>

namespace gosper {

// Base class for everything this library throws on purpose.  Invalid
// mathematical operations (division by zero, singular matrices, parameters
// on a pole) raise DomainError; malformed textual input raises ParseError
// with a 1-based source position; mismatched matrix shapes raise
// DimensionError.  Out-of-memory and similar conditions are left to the
// underlying allocators.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error(message + " (line " + std::to_string(line) + ", column " +
                std::to_string(column) + ")"),
          line(line),
          column(column) {}

    int line;
    int column;
};

}  // namespace gosper
