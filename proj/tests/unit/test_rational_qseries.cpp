#include <doctest.h>

#include "abelmoments/qseries.hpp"
#include "abelmoments/rational.hpp"

using namespace abelmoments;

TEST_CASE("rational parse and render") {
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("+1/3") == Rational(1, 3));
  CHECK(Rational(3, 2).str() == "3/2");
  CHECK(Rational(5).str() == "5/1");
  CHECK_THROWS_AS(Rational::parse("1/0"), DomainError);
  CHECK_THROWS_AS(Rational::parse("abc"), DomainError);
  CHECK_THROWS_AS(Rational::parse("1/-2"), DomainError);
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("decimal preview truncates") {
  CHECK(Rational(2, 3).decimal(4) == "0.6666");
  CHECK(Rational(-2, 3).decimal(2) == "-0.66");
  CHECK(Rational(7).decimal(0) == "7");
  CHECK(Rational(1, 8).decimal(5) == "0.12500");
}

TEST_CASE("rational powers") {
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(0).pow(0) == Rational(1));
  CHECK_THROWS_AS(Rational(0).pow(-1), DomainError);
}

TEST_CASE("q-pochhammer against direct products") {
  const Rational q(1, 3), a(2, 5);
  Rational direct(1);
  for (int i = 0; i < 6; ++i) {
    CHECK(q_pochhammer(a, q, i) == direct);
    direct *= Rational(1) - a * q.pow(i);
  }
  CHECK_THROWS_AS(q_pochhammer(a, q, -1), DomainError);
}

TEST_CASE("q-binomial Pascal recurrence and edge cases") {
  const Rational q(2, 7);
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k < n; ++k) {
      CHECK(q_binomial(n, k, q) == q_binomial(n - 1, k - 1, q) + q.pow(k) * q_binomial(n - 1, k, q));
    }
    CHECK(q_binomial(n, 0, q) == Rational(1));
    CHECK(q_binomial(n, n, q) == Rational(1));
    CHECK(q_binomial(n, n + 1, q) == Rational(0));
    CHECK(q_binomial(n, -1, q) == Rational(0));
  }
  // At q = 1/2 the Gaussian binomial (4 choose 2) is (1+q^2)(1+q+q^2).
  CHECK(q_binomial(4, 2, Rational(1, 2)) == Rational(5, 4) * Rational(7, 4));
  CHECK_THROWS_AS(q_binomial(-1, 0, q), DomainError);
}

TEST_CASE("euler product approaches the pentagonal series") {
  const Rational e = euler_product(Rational(1, 2), 60);
  CHECK(e.to_double() == doctest::Approx(0.288788095086602).epsilon(1e-14));
  CHECK_THROWS_AS(euler_product(Rational(1), 10), DomainError);
  CHECK_THROWS_AS(euler_product(Rational(1, 2), 0), DomainError);
}
