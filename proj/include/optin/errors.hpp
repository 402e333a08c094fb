#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace optin {

// Bad input: malformed files, out-of-range ids, invalid probabilities.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& message);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// The exact solver gave up: the instance is too large to solve exactly.
class SolverLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace optin
