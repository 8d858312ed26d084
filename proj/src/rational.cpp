#include "nlswap/rational.hpp"

#include "nlswap/errors.hpp"

#include <cctype>
#include <stdexcept>

namespace nlswap {

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

Rational frac(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num);
    r /= den;
    return r;
}

std::optional<Rational> try_parse_rational(const std::string& text) {
    const std::string s = strip(text);
    const std::size_t slash = s.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_token(s)) return std::nullopt;
        return Rational(Int(s));
    }
    const std::string num = strip(s.substr(0, slash));
    const std::string den = strip(s.substr(slash + 1));
    if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
    const Int d(den);
    if (d == 0) return std::nullopt;
    Rational r((Int(num)));
    r /= Rational(d);
    return r;
}

Rational parse_rational(const std::string& text) {
    auto r = try_parse_rational(text);
    if (!r) throw ParseError("malformed rational: \"" + text + "\"");
    return *r;
}

std::string to_fraction_string(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

}  // namespace nlswap
