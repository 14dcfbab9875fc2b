#include <doctest.h>

#include <cmath>
#include <numbers>

#include "groverpt/serialize.hpp"
#include "groverpt/series.hpp"
#include "test_util.hpp"

using namespace groverpt;

namespace {

TruncatedSeries random_series(testing::RationalGen& gen, int cap) {
  TruncatedSeries s(cap);
  for (int i = 0; i <= cap; ++i) s.set_coeff(i, gen.next());
  return s;
}

}  // namespace

TEST_CASE("taylor_trig matches the known expansions") {
  const TruncatedSeries c = taylor_trig(TrigKind::cos_sq_2phi, 4);
  CHECK(c.coeff(0) == Rational(1));
  CHECK(c.coeff(1) == Rational(0));
  CHECK(c.coeff(2) == Rational(-4));
  CHECK(c.coeff(4) == Rational(16, 3));

  const TruncatedSeries s = taylor_trig(TrigKind::sin_sq_2phi, 2);
  CHECK(s.coeff(0) == Rational(0));
  CHECK(s.coeff(2) == Rational(4));

  const TruncatedSeries c4 = taylor_trig(TrigKind::cos_4phi, 4);
  CHECK(c4.coeff(0) == Rational(1));
  CHECK(c4.coeff(2) == Rational(-8));
  CHECK(c4.coeff(4) == Rational(32, 3));

  const TruncatedSeries s4 = taylor_trig(TrigKind::sin_4phi, 5);
  CHECK(s4.coeff(1) == Rational(4));
  CHECK(s4.coeff(3) == Rational(-32, 3));
  CHECK(s4.coeff(5) == Rational(128, 15));
}

TEST_CASE("Pythagorean identity holds exactly at every cap") {
  for (int cap : {0, 1, 2, 7, 20, 41}) {
    TruncatedSeries sum = taylor_trig(TrigKind::cos_sq_2phi, cap);
    sum += taylor_trig(TrigKind::sin_sq_2phi, cap);
    CHECK(sum == TruncatedSeries::constant(1, cap));
    CHECK(sum.first_nonzero() == 0);
  }
}

TEST_CASE("arithmetic contracts") {
  testing::RationalGen gen(7);
  const TruncatedSeries a = random_series(gen, 6);

  SUBCASE("a + 0 == a") {
    TruncatedSeries sum = a;
    sum += TruncatedSeries(6);
    CHECK(sum == a);
  }
  SUBCASE("cap mismatch on add/sub is a contract violation") {
    TruncatedSeries b(5);
    CHECK_THROWS_AS(b += a, std::invalid_argument);
    CHECK_THROWS_AS(b -= a, std::invalid_argument);
  }
  SUBCASE("mul truncates at min cap") {
    const TruncatedSeries theta = TruncatedSeries::monomial(1, 1, 1);
    const TruncatedSeries prod = theta * theta;  // T^2 beyond cap 1
    CHECK(prod.cap() == 1);
    CHECK(prod.first_nonzero() == -1);
  }
  SUBCASE("(1 - cos 4T)/2 equals the sin^2 2T series") {
    TruncatedSeries one_minus = TruncatedSeries::constant(1, 6);
    one_minus -= taylor_trig(TrigKind::cos_4phi, 6);
    one_minus.scale(Rational(1, 2));
    CHECK(one_minus == taylor_trig(TrigKind::sin_sq_2phi, 6));
    CHECK(one_minus.coeff(2) == Rational(4));
    CHECK(one_minus.coeff(4) == Rational(-16, 3));
    CHECK(one_minus.coeff(6) == Rational(128, 45));
  }
}

TEST_CASE("equality compares up to the smaller cap") {
  TruncatedSeries a(3), b(5);
  a.set_coeff(2, Rational(1, 3));
  b.set_coeff(2, Rational(1, 3));
  b.set_coeff(5, Rational(9));  // beyond a's cap: not compared
  CHECK(a == b);
  b.set_coeff(2, Rational(1, 4));
  CHECK(a != b);
}

TEST_CASE("series_convolve: beta-integral basics") {
  // a = T^2, w = phi^2 -> 2!2!/5! T^5 = T^5/30
  const TruncatedSeries t2 = TruncatedSeries::monomial(1, 2, 5);
  const TruncatedSeries conv = series_convolve(t2, t2, 6);
  CHECK(conv.coeff(5) == Rational(1, 30));
  CHECK(conv.first_nonzero() == 5);

  // a = 1, w = 1 -> T
  const TruncatedSeries one = TruncatedSeries::constant(1, 3);
  const TruncatedSeries lin = series_convolve(one, one, 3);
  CHECK(lin.coeff(1) == Rational(1));
  CHECK(lin.first_nonzero() == 1);

  CHECK_THROWS_AS(series_convolve(one, one, 0), std::invalid_argument);
}

TEST_CASE("series_convolve reproduces the first perturbation order") {
  // conv(f0, cos^2 2phi) + conv(g0, sin^2 2phi) has the Taylor expansion
  // (8/3) T^3 - (16/5) T^5 + (512/315) T^7 + ...
  const int cap = 9;
  const TruncatedSeries f0 = taylor_trig(TrigKind::sin_sq_2phi, cap);
  const TruncatedSeries g0 = taylor_trig(TrigKind::cos_sq_2phi, cap);
  TruncatedSeries f1 = series_convolve(f0, taylor_trig(TrigKind::cos_sq_2phi, cap), cap);
  f1 += series_convolve(g0, taylor_trig(TrigKind::sin_sq_2phi, cap), cap);
  CHECK(f1.first_nonzero() == 3);
  CHECK(f1.coeff(3) == Rational(8, 3));
  CHECK(f1.coeff(5) == Rational(-16, 5));
  CHECK(f1.coeff(7) == Rational(512, 315));
}

TEST_CASE("convolution is bilinear and shifts degrees by one") {
  testing::RationalGen gen(99);
  for (int trial = 0; trial < 25; ++trial) {
    const int cap = 8;
    const TruncatedSeries a = random_series(gen, cap);
    const TruncatedSeries b = random_series(gen, cap);
    const TruncatedSeries w = random_series(gen, cap);
    const Rational alpha = gen.next();

    TruncatedSeries lhs_in = alpha * a;
    lhs_in += b;
    const TruncatedSeries lhs = series_convolve(lhs_in, w, cap);
    TruncatedSeries rhs = alpha * series_convolve(a, w, cap);
    rhs += series_convolve(b, w, cap);
    CHECK(lhs == rhs);
  }
  // degree shift: leading powers add plus one
  TruncatedSeries a(10), w(10);
  a.set_coeff(3, Rational(5, 7));
  a.set_coeff(6, Rational(1));
  w.set_coeff(2, Rational(-2, 3));
  const TruncatedSeries conv = series_convolve(a, w, 10);
  CHECK(conv.first_nonzero() == 3 + 2 + 1);
}

TEST_CASE("evaluation") {
  const TruncatedSeries f0 = taylor_trig(TrigKind::sin_sq_2phi, 40);
  const double quarter_pi = std::numbers::pi / 4;
  CHECK(std::abs(f0.eval(quarter_pi) - 1.0) <= 1e-10);
  CHECK(std::abs(f0.eval(0.3) - std::pow(std::sin(0.6), 2)) <= 1e-12);
  CHECK(f0.eval(0.3) == doctest::Approx(0.31882).epsilon(1e-4));
  CHECK(f0.eval(0.0) == f0.coeff(0).to_double());
  CHECK_THROWS_AS(f0.eval(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("divided_by_power") {
  TruncatedSeries s(6);
  s.set_coeff(3, Rational(2));
  s.set_coeff(5, Rational(-7, 3));
  const TruncatedSeries d = s.divided_by_power(3);
  CHECK(d.cap() == 3);
  CHECK(d.coeff(0) == Rational(2));
  CHECK(d.coeff(2) == Rational(-7, 3));
  s.set_coeff(1, Rational(1));
  CHECK_THROWS_AS(s.divided_by_power(3), invariant_violation);
}

TEST_CASE("JSON round trip is bit-exact") {
  testing::RationalGen gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    const TruncatedSeries s = random_series(gen, 7);
    const TruncatedSeries back = series_from_json(series_to_json(s));
    CHECK(back.cap() == s.cap());
    CHECK(back == s);
  }
  CHECK_THROWS(series_from_json("{\"cap\": 3, \"coeffs\": [\"1\"]}"));
}
