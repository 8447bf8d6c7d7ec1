#include "mdep/rational.hpp"

#include <cmath>
#include <cstdint>

#include "mdep/error.hpp"

namespace mdep {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(std::string_view text, std::string_view whole) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size()) fail(ErrorKind::parse, "not a rational: '" + std::string(whole) + "'");
    cpp_int result = 0;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') fail(ErrorKind::parse, "not a rational: '" + std::string(whole) + "'");
        result = result * 10 + (c - '0');
    }
    return negative ? cpp_int(-result) : result;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view t = trim(text);
    const auto slash = t.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(t, text));
    const cpp_int num = parse_integer(trim(t.substr(0, slash)), text);
    const cpp_int den = parse_integer(trim(t.substr(slash + 1)), text);
    if (den == 0) fail(ErrorKind::parse, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

Rational rational_from_double(double value) {
    require(std::isfinite(value), "cannot represent a non-finite value exactly");
    if (value == 0.0) return Rational(0);
    int exponent = 0;
    const double mantissa = std::frexp(value, &exponent);
    // mantissa * 2^53 is an integer below 2^53
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
    exponent -= 53;
    cpp_int num = scaled;
    cpp_int den = 1;
    if (exponent >= 0) {
        num <<= exponent;
    } else {
        den <<= -exponent;
    }
    return Rational(num, den);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_string(const Rational& value) {
    const auto num = boost::multiprecision::numerator(value);
    const auto den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace mdep
