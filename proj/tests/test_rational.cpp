#include <doctest.h>

#include "groverpt/rational.hpp"
#include "groverpt/series.hpp"
#include "test_util.hpp"

using namespace groverpt;

TEST_CASE("rationals are canonical: lowest terms, positive denominator") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6).to_string() == "-1/2");
  CHECK(Rational(3, -6).denominator() == 2);
  CHECK(Rational(-4, -8) == Rational(1, 2));
  CHECK(Rational(0, 7).to_string() == "0");
  CHECK(Rational(0, 7).denominator() == 1);
}

TEST_CASE("construction and division by zero throw") {
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("not a number"), std::invalid_argument);
}

TEST_CASE("string round trip") {
  for (const char* s : {"0", "1", "-1", "22/7", "-355/113", "123456789123456789123/1000000000000007"}) {
    CHECK(Rational::from_string(s).to_string() == s);
  }
  CHECK(Rational::from_string("4/8") == Rational(1, 2));
}

TEST_CASE("exact field axioms on random values") {
  testing::RationalGen gen(42);
  for (int i = 0; i < 300; ++i) {
    const Rational a = gen.next(), b = gen.next(), c = gen.next();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a - a == Rational(0));
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("factorials and the beta-integral weight") {
  CHECK(factorial(0) == Rational(1));
  CHECK(factorial(5) == Rational(120));
  CHECK(factorial_int(20) == mpz_class("2432902008176640000"));
  // integral_0^T (T-phi)^2 phi^2 dphi = 2!2!/5! T^5 = T^5/30
  CHECK(beta_weight(2, 2) == Rational(1, 30));
  CHECK(beta_weight(0, 0) == Rational(1));
  CHECK(beta_weight(1, 0) == Rational(1, 2));
}

TEST_CASE("to_double is the nearest double") {
  CHECK(Rational(1, 2).to_double() == 0.5);
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}
