#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace regconst {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical "num/den" rendering; the denominator is always written, so 9 is "9/1".
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Accepts "a/b" or "a" (optional sign on the numerator). Throws syntax errors.
Rational parse_rational(std::string_view text);

Rational power(const Rational& base, std::int64_t exponent);

/// Prime factorisation of |n| for n != 0. Trial division followed by Pollard-Brent.
std::map<Integer, std::int64_t> factorize(const Integer& n);

/// p-adic valuation of a nonzero rational.
std::int64_t valuation(const Rational& value, const Integer& prime);

bool is_prime(std::uint64_t n);

/// Möbius function of a positive integer.
int moebius(std::uint64_t n);

/// Exact positive rational together with its prime factorisation.
struct RegulatorValue {
  Rational value;
  std::map<Integer, std::int64_t> valuations;

  static RegulatorValue from(const Rational& value);

  std::int64_t valuation_at(const Integer& prime) const;
};

}  // namespace regconst
