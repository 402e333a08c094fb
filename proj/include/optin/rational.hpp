#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace optin {

using Rational = boost::multiprecision::cpp_rational;

// Accepts "a/b", decimal "0.125" and integer forms; decimals convert
// exactly. Throws ValidationError on anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);
double to_double(const Rational& r);

}  // namespace optin
