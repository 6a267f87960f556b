#include "ccps/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ccps {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parseDigits(std::string_view digits, std::string_view whole)
{
    if (digits.empty()) throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
    cpp_int n = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
        n = n * 10 + (c - '0');
    }
    return n;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Rational result;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        cpp_int num = parseDigits(body.substr(0, slash), text);
        cpp_int den = parseDigits(body.substr(slash + 1), text);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        result = Rational(num, den);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view intPart = body.substr(0, dot);
        std::string_view fracPart = body.substr(dot + 1);
        cpp_int whole = intPart.empty() ? cpp_int(0) : parseDigits(intPart, text);
        cpp_int frac = parseDigits(fracPart, text);
        cpp_int scale = 1;
        for (std::size_t i = 0; i < fracPart.size(); ++i) scale *= 10;
        result = Rational(whole * scale + frac, scale);
    } else {
        result = Rational(parseDigits(body, text));
    }
    return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& r)
{
    cpp_int num = boost::multiprecision::numerator(r);
    cpp_int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();

    cpp_int rest = den;
    unsigned twos = 0, fives = 0;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    if (rest != 1) return num.str() + "/" + den.str();

    unsigned digits = std::max(twos, fives);
    cpp_int scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    cpp_int scaled = num * (scale / den);
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string s = scaled.str();
    if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, ".");
    return negative ? "-" + s : s;
}

double to_double(const Rational& r)
{
    return r.convert_to<double>();
}

Rational midpoint(const Rational& a, const Rational& b)
{
    return (a + b) / 2;
}

} // namespace ccps
