#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace ccps {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "12", "-0.4", "1.01" or "3/7" exactly. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Terminating decimals print as decimals ("9.9"), everything else as "p/q".
std::string to_string(const Rational& r);

double to_double(const Rational& r);

Rational midpoint(const Rational& a, const Rational& b);

} // namespace ccps
