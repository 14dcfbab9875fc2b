#include <doctest.h>

#include <cmath>
#include <numbers>

#include "groverpt/recurrence.hpp"

using namespace groverpt;

namespace {

const std::vector<OrderPair>& orders_k20() {
  static const std::vector<OrderPair> v =
      compute_fg(FgOptions{.max_order = 20, .degree = 40, .closed_form_max_order = 10});
  return v;
}

}  // namespace

TEST_CASE("base case matches the f0/g0 expansions") {
  const OrderPair& o = orders_k20()[0];
  CHECK(o.f_series.coeff(2) == Rational(4));
  CHECK(o.f_series.coeff(4) == Rational(-16, 3));
  CHECK(o.f_series.coeff(6) == Rational(128, 45));
  CHECK(o.g_series.coeff(0) == Rational(1));
  CHECK(o.g_series.coeff(2) == Rational(-4));
  CHECK(o.g_series.coeff(4) == Rational(16, 3));
}

TEST_CASE("first order has the known closed form") {
  const auto v = orders_k20()[1].f_closed->trig_view();
  CHECK(v.poly.at(1) == Rational(1, 2));
  CHECK(v.cos4.at(1) == Rational(-1, 4));
  CHECK(v.sin4.at(0) == Rational(-1, 16));
}

TEST_CASE("trace identity f_k + g_k = Theta^k / k! exactly, k <= 20") {
  for (const OrderPair& o : orders_k20()) {
    TruncatedSeries sum = o.f_series;
    sum += o.g_series;
    CHECK(sum == TruncatedSeries::monomial(Rational(1) / factorial(static_cast<unsigned>(o.k)), o.k,
                                           sum.cap()));
    if (o.f_closed) {
      ExpPoly ep_sum = *o.f_closed + *o.g_closed;
      CHECK(ep_sum == ExpPoly::theta_power(o.k, Rational(1) / factorial(static_cast<unsigned>(o.k))));
    }
  }
}

TEST_CASE("leading powers and parity, k <= 20") {
  for (const OrderPair& o : orders_k20()) {
    CHECK(o.f_series.first_nonzero() == o.k + 2);
    CHECK(o.g_series.first_nonzero() == o.k);
    for (int i = 0; i <= o.f_series.cap(); ++i) {
      if ((i - o.k) % 2 != 0) {
        CHECK(o.f_series.coeff(i).is_zero());
        CHECK(o.g_series.coeff(i).is_zero());
      }
    }
  }
}

TEST_CASE("series and closed forms agree exactly up to the crossover order") {
  for (const OrderPair& o : orders_k20()) {
    if (!o.f_closed) continue;
    CHECK(o.f_closed->to_series(o.f_series.cap()) == o.f_series);
    CHECK(o.g_closed->to_series(o.g_series.cap()) == o.g_series);
  }
  CHECK(orders_k20()[10].f_closed.has_value());
  CHECK_FALSE(orders_k20()[11].f_closed.has_value());
}

TEST_CASE("F_of divides by Theta^k") {
  SUBCASE("F_0 = sin^2 2Theta") {
    const FOrder F0 = F_of(orders_k20()[0]);
    CHECK(F0.series == taylor_trig(TrigKind::sin_sq_2phi, 40));
    CHECK(F0.closed->divisor == 0);
  }
  SUBCASE("F_2 at pi/4 equals 5/16") {
    const FOrder F2 = F_of(orders_k20()[2]);
    CHECK(F2.closed->eval_quarter_pi_exact() == Rational(5, 16));
    CHECK(std::abs(F2.closed->eval_naive(std::numbers::pi / 4) - 5.0 / 16.0) <= 1e-12);
    CHECK(std::abs(F2.series.eval(std::numbers::pi / 4) - 5.0 / 16.0) <= 1e-12);
  }
  SUBCASE("every F_k starts at Theta^2") {
    for (int k : {0, 1, 2, 5, 10, 20}) {
      const FOrder F = F_of(orders_k20()[static_cast<size_t>(k)]);
      CHECK(F.series.first_nonzero() == 2);
      CHECK(F.series.cap() == 40);
    }
  }
  SUBCASE("a nonzero coefficient below power k is an invariant violation") {
    OrderPair bad = orders_k20()[2];
    bad.f_series.set_coeff(1, Rational(1));
    CHECK_THROWS_AS(F_of(bad), invariant_violation);
  }
}

TEST_CASE("0 <= F_k <= 1/k! on a Theta grid in (0, pi]") {
  for (int k : {1, 2, 5, 10}) {
    const FOrder F = F_of(orders_k20()[static_cast<size_t>(k)]);
    const double upper = 1.0 / factorial(static_cast<unsigned>(k)).to_double();
    for (int i = 1; i <= 100; ++i) {
      const double theta = std::numbers::pi * i / 100.0;
      // series below Theta = 1 (tiny truncation error there),
      // closed form above (no cancellation at O(1) arguments)
      const double v = theta < 1.0 ? F.series.eval(theta) : F.closed->eval_naive(theta);
      CHECK(v >= -1e-9);
      CHECK(v <= upper + 1e-9);
    }
  }
}

TEST_CASE("option validation") {
  CHECK_THROWS_AS(compute_fg(FgOptions{.max_order = -1, .degree = 40, .closed_form_max_order = 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_fg(FgOptions{.max_order = 2, .degree = 1, .closed_form_max_order = 0}),
                  std::invalid_argument);
}
