#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mdep {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", "-p/q" or an integer literal. Throws Error(parse) otherwise.
Rational parse_rational(std::string_view text);

/// The exact binary value of a finite double.
Rational rational_from_double(double value);

double to_double(const Rational& value);

std::string to_string(const Rational& value);

}  // namespace mdep
