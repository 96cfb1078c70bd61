#include <doctest.h>

#include <numeric>
#include <random>

#include "regconst/error.hpp"
#include "regconst/matrix.hpp"
#include "regconst/rational.hpp"

using namespace regconst;

namespace {

// Leibniz expansion, fine up to 6x6.
Integer leibniz(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Integer total = 0;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Integer term = sign;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("rationals print as num/den and parse back") {
  CHECK(to_string(Rational(9)) == "9/1");
  CHECK(to_string(Rational(-3, 6)) == "-1/2");
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
}

TEST_CASE("power handles negative exponents") {
  CHECK(power(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(power(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(power(Rational(5), 0) == 1);
}

TEST_CASE("factorisation multiplies back") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    Integer n = 1;
    for (int k = 0; k < 4; ++k) n *= static_cast<unsigned long>(rng() % 100000 + 2);
    Integer back = 1;
    for (const auto& [p, e] : factorize(n)) {
      CHECK(mpz_probab_prime_p(p.get_mpz_t(), 30) > 0);
      for (std::int64_t i = 0; i < e; ++i) back *= p;
    }
    CHECK(back == n);
  }
  // product of two primes above the trial-division range
  const Integer big = Integer(1000003) * Integer(999983);
  const auto f = factorize(big);
  CHECK(f.size() == 2);
  CHECK(f.at(Integer(999983)) == 1);
}

TEST_CASE("valuations and regulator values") {
  CHECK(valuation(Rational(18, 5), 3) == 2);
  CHECK(valuation(Rational(5, 18), 3) == -2);
  CHECK(valuation(Rational(5, 18), 7) == 0);
  const auto v = RegulatorValue::from(Rational(9, 8));
  CHECK(v.valuation_at(3) == 2);
  CHECK(v.valuation_at(2) == -3);
  CHECK(v.valuation_at(5) == 0);
  CHECK_THROWS_AS(RegulatorValue::from(Rational(0)), Error);
}

TEST_CASE("moebius and primality") {
  const int expected[] = {0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (std::uint64_t n = 1; n <= 12; ++n) CHECK(moebius(n) == expected[n]);
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("Bareiss determinant agrees with Leibniz") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const IntMatrix m = random_matrix(rng, n, n, 5);
    CHECK(determinant(m) == leibniz(m));
    CHECK(determinant(to_rational(m)) == Rational(leibniz(m)));
  }
}

TEST_CASE("integer kernel is exact and saturated") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 2 + rng() % 5;
    IntMatrix a = random_matrix(rng, r, c, 3);
    // duplicate a row now and then to force dependencies
    if (r > 1 && t % 3 == 0)
      for (std::size_t j = 0; j < c; ++j) a(r - 1, j) = 2 * a(0, j);
    const IntMatrix k = integer_kernel(a);
    CHECK(k.rows() + rank(to_rational(a)) == c);
    for (std::size_t i = 0; i < k.rows(); ++i) {
      for (std::size_t row = 0; row < r; ++row) {
        Integer s = 0;
        for (std::size_t j = 0; j < c; ++j) s += a(row, j) * k(i, j);
        CHECK(s == 0);
      }
    }
    // saturation: the gcd of the maximal minors is 1
    if (k.rows() > 0 && k.rows() <= 3) {
      Integer g = 0;
      std::vector<std::size_t> cols(k.rows());
      std::vector<bool> pick(c, false);
      std::fill(pick.begin(), pick.begin() + static_cast<long>(k.rows()), true);
      do {
        std::size_t q = 0;
        for (std::size_t j = 0; j < c; ++j)
          if (pick[j]) cols[q++] = j;
        IntMatrix minor(k.rows(), k.rows());
        for (std::size_t i = 0; i < k.rows(); ++i)
          for (std::size_t j = 0; j < k.rows(); ++j) minor(i, j) = k(i, cols[j]);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(abs(leibniz(minor))).get_mpz_t());
      } while (std::prev_permutation(pick.begin(), pick.end()));
      CHECK(g == 1);
    }
  }
}

TEST_CASE("Hermite normal form is canonical") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    const IntMatrix a = random_matrix(rng, 3, 4, 4);
    // a unimodular row operation leaves the normal form unchanged
    IntMatrix b = a;
    for (std::size_t j = 0; j < 4; ++j) b(0, j) += 3 * b(2, j);
    b.swap_rows(0, 1);
    CHECK(hermite_normal_form(a) == hermite_normal_form(b));
    const IntMatrix h = hermite_normal_form(a);
    std::size_t last_pivot = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
      std::size_t p = 0;
      while (p < h.cols() && h(i, p) == 0) ++p;
      REQUIRE(p < h.cols());
      CHECK(h(i, p) > 0);
      if (i > 0) CHECK(p > last_pivot);
      for (std::size_t k = 0; k < i; ++k) {
        CHECK(h(k, p) >= 0);
        CHECK(h(k, p) < h(i, p));
      }
      last_pivot = p;
    }
  }
}

TEST_CASE("solve and inverse") {
  RatMatrix b(3, 2);
  b(0, 0) = 1;
  b(1, 1) = 2;
  b(2, 0) = 1;
  b(2, 1) = 1;
  RatMatrix x(2, 1);
  x(0, 0) = Rational(1, 3);
  x(1, 0) = -2;
  const auto got = solve(b, b * x);
  REQUIRE(got.has_value());
  CHECK(*got == x);
  RatMatrix y(3, 1);
  y(0, 0) = 1;
  CHECK_FALSE(solve(b, y).has_value());

  std::mt19937_64 rng(19);
  for (int t = 0; t < 30; ++t) {
    const RatMatrix m = to_rational(random_matrix(rng, 4, 4, 6));
    const auto inv = inverse(m);
    if (determinant(m) == 0) {
      CHECK_FALSE(inv.has_value());
    } else {
      REQUIRE(inv.has_value());
      CHECK(m * *inv == RatMatrix::identity(4));
    }
  }
}
