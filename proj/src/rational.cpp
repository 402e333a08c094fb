#include "optin/rational.hpp"

#include <cctype>

#include <fmt/format.h>

#include "optin/errors.hpp"

namespace optin {

namespace {

boost::multiprecision::cpp_int parse_digits(std::string_view digits, std::string_view whole) {
    if (digits.empty()) throw ValidationError(fmt::format("malformed number '{}'", whole));
    boost::multiprecision::cpp_int value = 0;
    for (const char ch : digits) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            throw ValidationError(fmt::format("malformed number '{}'", whole));
        }
        value = value * 10 + (ch - '0');
    }
    return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    Rational value;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = parse_digits(text.substr(0, slash), whole);
        const auto den = parse_digits(text.substr(slash + 1), whole);
        if (den == 0) throw ValidationError(fmt::format("zero denominator in '{}'", whole));
        value = Rational(num, den);
    } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const std::string_view int_part = text.substr(0, dot);
        const std::string_view frac_part = text.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) {
            throw ValidationError(fmt::format("malformed number '{}'", whole));
        }
        boost::multiprecision::cpp_int scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        const auto ip = int_part.empty() ? boost::multiprecision::cpp_int(0)
                                         : parse_digits(int_part, whole);
        const auto fp = frac_part.empty() ? boost::multiprecision::cpp_int(0)
                                          : parse_digits(frac_part, whole);
        value = Rational(ip * scale + fp, scale);
    } else {
        value = Rational(parse_digits(text, whole));
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace optin
