#include "optin/errors.hpp"

#include <fmt/format.h>

namespace optin {

ParseError::ParseError(std::size_t line, const std::string& message)
    : ValidationError(fmt::format("line {}: {}", line, message)), line_(line) {}

}  // namespace optin
