#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "tradeflow/exchange.hpp"

using namespace tradeflow;

TEST_CASE("exchange flow on each branch") {
  CHECK(exchange_flow({0.5, 0.8}) == 0.0);
  CHECK(exchange_flow({1.5, 0.5}) == 0.5);
  CHECK(exchange_flow({1.2, 1.7}) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(exchange_flow({0.3, 1.25}) == -0.25);
  CHECK(exchange_flow({1.0, 1.0}) == 0.0);
}

TEST_CASE("regime classification") {
  CHECK(classify_regime({0.9, 0.9}) == Regime::NoExchange);
  CHECK(classify_regime({1.5, 0.8}) == Regime::AExports);
  CHECK(classify_regime({0.8, 1.5}) == Regime::BExports);
  CHECK(classify_regime({1.1, 1.5}) == Regime::Bilateral);
  CHECK(classify_regime({1.0, 1.0}) == Regime::NoExchange);
  CHECK(classify_regime({1.0, 1.5}) == Regime::BExports);
}

TEST_CASE("rhs examples") {
  auto r = rhs({0.5, 0.5}, {1.0, 2.0, 1.0, 2.0, 5.0});
  CHECK(r.deta_a == 0.0);
  CHECK(r.deta_b == 0.0);

  r = rhs({1.5, 0.5}, {1.0, 0.0, 0.5, 0.0, 2.0});
  CHECK(r.deta_a == -0.5);
  CHECK(r.deta_b == 1.0);

  test::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const GoodEconomy e{rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5), 0.0};
    r = rhs({rng.uniform(0, 3), rng.uniform(0, 3)}, e);
    CHECK(r.deta_a == e.p_a - e.c_a);
    CHECK(r.deta_b == e.p_b - e.c_b);
  }
}

TEST_CASE("property: continuity across the guard") {
  test::Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double delta = rng.uniform(0.0, 0.5);
    const double other = rng.uniform(0.0, 3.0);
    for (double sign : {-1.0, 1.0}) {
      const double f0 = exchange_flow({1.0, other});
      CHECK(std::abs(exchange_flow({1.0 + sign * delta, other}) - f0) <= delta + 1e-15);
      const double g0 = exchange_flow({other, 1.0});
      CHECK(std::abs(exchange_flow({other, 1.0 + sign * delta}) - g0) <= delta + 1e-15);
    }
  }
}

TEST_CASE("property: total stock rate is independent of sigma and state") {
  test::Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    GoodEconomy e{rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5)};
    const NormalizedState s{rng.uniform(0, 3), rng.uniform(0, 3)};
    const auto r = rhs(s, e);
    const double expected = (e.p_a - e.c_a) + (e.p_b - e.c_b);
    // Equal up to rounding of the exchange term.
    CHECK(std::abs((r.deta_a + r.deta_b) - expected) <= 1e-14 * (1.0 + e.sigma * 3.0 + 10.0));
  }
}

TEST_CASE("property: bilateral antisymmetry and sign rules") {
  test::Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(1.0 + 1e-9, 4.0);
    const double b = rng.uniform(1.0 + 1e-9, 4.0);
    CHECK(exchange_flow({a, b}) == -exchange_flow({b, a}));

    const double low = rng.uniform(0.0, 1.0);
    CHECK(exchange_flow({a, low}) >= 0.0);
    CHECK(exchange_flow({low, b}) <= 0.0);
  }
}
