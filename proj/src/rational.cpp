#include "regconst/rational.hpp"

#include <cctype>

#include "regconst/error.hpp"

namespace regconst {

std::string_view category_name(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::validation: return "validation";
    case ErrorCategory::resource: return "resource";
    case ErrorCategory::data: return "data";
    case ErrorCategory::syntax: return "syntax";
    case ErrorCategory::usage: return "usage";
    case ErrorCategory::io: return "io";
    case ErrorCategory::internal: return "internal";
  }
  return "internal";
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

namespace {

bool parse_integer(std::string_view text, bool allow_sign, Integer& out) {
  if (text.empty()) return false;
  std::size_t start = 0;
  if (allow_sign && (text[0] == '-' || text[0] == '+')) start = 1;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  Integer num;
  Integer den = 1;
  const bool ok = slash == std::string_view::npos
                      ? parse_integer(text, true, num)
                      : parse_integer(text.substr(0, slash), true, num) &&
                            parse_integer(text.substr(slash + 1), false, den);
  if (!ok) fail(ErrorCategory::syntax, "malformed rational '" + std::string(text) + "'");
  if (den == 0) fail(ErrorCategory::syntax, "zero denominator in '" + std::string(text) + "'");
  Rational result(num, den);
  result.canonicalize();
  return result;
}

Rational power(const Rational& base, std::int64_t exponent) {
  if (exponent == 0) return Rational(1);
  if (base == 0) {
    if (exponent < 0) fail(ErrorCategory::internal, "zero raised to a negative power");
    return Rational(0);
  }
  const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational result = exponent > 0 ? Rational(num, den) : Rational(den, num);
  result.canonicalize();
  return result;
}

namespace {

Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    const auto step = [&](const Integer& v) {
      Integer r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          Integer d = x - y;
          q = q * abs(d);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        Integer d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(Integer n, std::map<Integer, std::int64_t>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::map<Integer, std::int64_t> factorize(const Integer& n) {
  if (n == 0) fail(ErrorCategory::internal, "factorisation of zero");
  std::map<Integer, std::int64_t> out;
  Integer m = abs(n);
  for (unsigned long p = 2; p < 10000 && m > 1; ++p) {
    if (!is_prime(p)) continue;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++out[Integer(p)];
    }
  }
  factor_into(m, out);
  return out;
}

std::int64_t valuation(const Rational& value, const Integer& prime) {
  if (value == 0) fail(ErrorCategory::internal, "valuation of zero");
  const auto count = [&](Integer n) {
    std::int64_t v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), prime.get_mpz_t())) {
      n /= prime;
      ++v;
    }
    return v;
  };
  return count(value.get_num()) - count(value.get_den());
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int moebius(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    n /= d;
    if (n % d == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

RegulatorValue RegulatorValue::from(const Rational& value) {
  if (value <= 0) fail(ErrorCategory::internal, "regulator value must be positive, got " + to_string(value));
  RegulatorValue out{value, {}};
  for (const auto& [p, e] : factorize(value.get_num())) out.valuations[p] += e;
  for (const auto& [p, e] : factorize(value.get_den())) out.valuations[p] -= e;
  return out;
}

std::int64_t RegulatorValue::valuation_at(const Integer& prime) const {
  const auto it = valuations.find(prime);
  return it == valuations.end() ? 0 : it->second;
}

}  // namespace regconst
