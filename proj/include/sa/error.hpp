#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sa {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structural problems: arity mismatches, unknown relations, out-of-range variables.
class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Raised when expression synthesis would exceed its configured size limits.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

} // namespace sa
