#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>

namespace nlswap {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// n/d as an exact rational; throws std::invalid_argument on d == 0.
Rational frac(long num, long den);

/// Accepts "n" or "n/d" with an optional sign on either part.
/// Throws ParseError on anything else (including zero denominators).
Rational parse_rational(const std::string& text);

std::optional<Rational> try_parse_rational(const std::string& text);

/// Canonical "num/den" rendering: lowest terms, positive denominator,
/// sign carried by the numerator. Integers render as "n/1".
std::string to_fraction_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace nlswap
