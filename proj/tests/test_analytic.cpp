#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "tradeflow/analytic.hpp"
#include "tradeflow/exchange.hpp"
#include "tradeflow/integrator.hpp"

using namespace tradeflow;

namespace {

GoodEconomy random_economy(test::Rng& rng, double sigma_lo = 0.1) {
  return {rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(sigma_lo, 5)};
}

double sup_distance(const NormalizedState& a, const NormalizedState& b) {
  return std::max(std::abs(a.eta_a - b.eta_a), std::abs(a.eta_b - b.eta_b));
}

NormalizedState solve(Regime r, const NormalizedState& s, const GoodEconomy& e, double dt) {
  switch (r) {
    case Regime::NoExchange: return solve_no_exchange(s, e, dt);
    case Regime::AExports: return solve_a_exports(s, e, dt);
    case Regime::BExports: return solve_b_exports(s, e, dt);
    case Regime::Bilateral: return solve_bilateral(s, e, dt);
  }
  return s;
}

SolverOptions numeric_options(double horizon, double step = 1e-3) {
  SolverOptions o;
  o.horizon = horizon;
  o.step = step;
  o.depletion_policy = DepletionPolicy::Continue;
  return o;
}

}  // namespace

TEST_CASE("no-exchange solution is linear") {
  const GoodEconomy e{0.1, 0.0, 0.0, 0.1, 0.0};
  const auto s = solve_no_exchange({0.5, 0.5}, e, 2.0);
  CHECK(s.eta_a == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(s.eta_b == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(solve_no_exchange({0.2, 0.4}, {1, 1, 1, 1, 0}, 7.5) == NormalizedState{0.2, 0.4});
  CHECK(solve_no_exchange({0.2, 0.4}, {3, 1, 1, 2, 0}, 0.0) == NormalizedState{0.2, 0.4});
  CHECK_THROWS(solve_no_exchange({0.2, 0.4}, {3, 1, 1, 2, 0}, -1.0));
}

TEST_CASE("A-exports closed form") {
  // Balanced totals keep eta_b below 1 so the regime never changes.
  const GoodEconomy e{1.0, 0.0, 0.5, 0.5, 2.0};
  const NormalizedState s0{1.5, 0.3};
  for (double dt : {0.0, 0.25, 1.0, 3.0}) {
    CHECK(solve_a_exports(s0, e, dt).eta_a == doctest::Approx(1.25 + 0.25 * std::exp(-2.0 * dt)).epsilon(1e-14));
  }
  CHECK(solve_a_exports(s0, e, 1.0).eta_a == doctest::Approx(1.28383).epsilon(1e-5));
  CHECK(solve_a_exports(s0, e, 0.0) == s0);

  // Equilibrium of the exporter: A2 = 0.
  const NormalizedState eq{(e.p_a - e.c_a + e.sigma) / e.sigma, 0.7};
  for (double dt : {0.5, 2.0, 10.0}) CHECK(solve_a_exports(eq, e, dt).eta_a == eq.eta_a);

  // Numeric oracle, single regime throughout (eta_a stays above 1).
  const auto ts = integrate_with_events(s0, e, std::nullopt, numeric_options(10.0));
  double worst = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    worst = std::max(worst, sup_distance(ts.states[i], solve_a_exports(s0, e, ts.times[i])));
  }
  CHECK(worst <= 1e-8);

  CHECK_THROWS_AS(solve_a_exports(s0, {1, 0, 0.5, 0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("B-exports mirrors A-exports") {
  test::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto e = random_economy(rng);
    const NormalizedState s0{rng.uniform(0, 3), rng.uniform(0, 3)};
    const double dt = rng.uniform(0, 5);
    const auto lhs = solve_b_exports(s0.swapped(), e.swapped(), dt);
    const auto rhs_ = solve_a_exports(s0, e, dt).swapped();
    CHECK(lhs == rhs_);
  }
  const GoodEconomy e{0.0, 1.2, 1.0, 0.2, 0.5};
  const NormalizedState eq{0.4, (e.p_b - e.c_b + e.sigma) / e.sigma};
  CHECK(solve_b_exports(eq, e, 4.0).eta_b == eq.eta_b);
  CHECK_THROWS_AS(solve_b_exports(eq, {0, 1, 0, 0, 0}, 1.0), std::invalid_argument);

  const NormalizedState s0{0.2, 2.5};
  const auto ts = integrate_with_events(s0, e, std::nullopt, numeric_options(3.0));
  double worst = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    worst = std::max(worst, sup_distance(ts.states[i], solve_b_exports(s0, e, ts.times[i])));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("bilateral closed form") {
  // net = (1, 0), sigma = 1, start (2, 1.5): d stays at d* = 0.5, s grows at 1.
  const GoodEconomy e{1.0, 0.0, 0.0, 0.0, 1.0};
  const auto s = solve_bilateral({2.0, 1.5}, e, 1.0);
  CHECK(s.eta_a == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(s.eta_b == doctest::Approx(2.0).epsilon(1e-15));

  // Symmetric economies with equal start: both rise at P_s / 2.
  const GoodEconomy sym{1.5, 1.5, 0.5, 0.5, 3.0};
  const auto z = solve_bilateral({1.2, 1.2}, sym, 2.0);
  CHECK(z.eta_a == doctest::Approx(3.2).epsilon(1e-15));
  CHECK(z.eta_b == z.eta_a);

  test::Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const auto ec = random_economy(rng);
    const NormalizedState s0{rng.uniform(1, 3), rng.uniform(1, 3)};
    const double dt = rng.uniform(0, 5);
    const auto st = solve_bilateral(s0, ec, dt);
    const double p_sum = ec.net_a() + ec.net_b();
    CHECK(std::abs((st.eta_a + st.eta_b) - (s0.eta_a + s0.eta_b) - p_sum * dt) <= 1e-12 * (1 + std::abs(p_sum * dt)));
  }
  CHECK_THROWS_AS(solve_bilateral({2, 2}, {1, 1, 1, 1, 0}, 1.0), std::invalid_argument);
}

TEST_CASE("property: semigroup within a regime") {
  test::Rng rng(25);
  for (auto regime : {Regime::NoExchange, Regime::AExports, Regime::BExports, Regime::Bilateral}) {
    for (int i = 0; i < 200; ++i) {
      const auto e = random_economy(rng);
      const NormalizedState s0{rng.uniform(0, 3), rng.uniform(0, 3)};
      const double t1 = rng.uniform(0, 2);
      const double t2 = rng.uniform(0, 2);
      const auto two_steps = solve(regime, solve(regime, s0, e, t1), e, t2);
      const auto one_step = solve(regime, s0, e, t1 + t2);
      CHECK(sup_distance(two_steps, one_step) <= 1e-12 * (1 + std::abs(s0.eta_a) + std::abs(s0.eta_b) + 20));
    }
  }
}

TEST_CASE("property: closed forms start with the model's time derivative") {
  test::Rng rng(27);
  const double h = 1e-6;
  for (int i = 0; i < 200; ++i) {
    const auto e = random_economy(rng);
    // States strictly inside each region so the finite difference stays in one branch.
    const NormalizedState states[] = {{rng.uniform(0, 0.9), rng.uniform(0, 0.9)},
                                      {rng.uniform(1.1, 3), rng.uniform(0, 0.9)},
                                      {rng.uniform(0, 0.9), rng.uniform(1.1, 3)},
                                      {rng.uniform(1.1, 3), rng.uniform(1.1, 3)}};
    for (const auto& s0 : states) {
      const Regime r = classify_regime(s0);
      const auto fwd = solve(r, s0, e, h);
      const auto expected = rhs(s0, e);
      // Forward difference error is O(h * |second derivative|) <= h * (2 sigma)^2 * |excess|.
      CHECK(std::abs((fwd.eta_a - s0.eta_a) / h - expected.deta_a) <= 1e-4);
      CHECK(std::abs((fwd.eta_b - s0.eta_b) / h - expected.deta_b) <= 1e-4);
      // Central difference on the closed-form derivative itself.
      const auto sol = closed_form(r, s0, e);
      CHECK(std::abs(sol.eta_a.derivative(0.0) - expected.deta_a) <= 1e-8);
      CHECK(std::abs(sol.eta_b.derivative(0.0) - expected.deta_b) <= 1e-8);
    }
  }
}

TEST_CASE("simulate_analytic: linear crossing at t = 2") {
  const GoodEconomy e{0.25, 0.0, 0.0, 0.0, 1.0};
  const auto traj = simulate_analytic({0.5, 0.5}, e, 10.0);
  REQUIRE(traj.segments.size() >= 2);
  CHECK(traj.segments[0].regime == Regime::NoExchange);
  CHECK(traj.segments[0].t_start == 0.0);
  CHECK(traj.segments[0].t_end == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(traj.segments[0].t_end - 2.0) <= 1e-10);
  CHECK(traj.segments[1].regime == Regime::AExports);

  // Numeric oracle over the full horizon.
  SolverOptions o;
  o.horizon = 10.0;
  o.depletion_policy = DepletionPolicy::Continue;
  const auto ts = integrate_with_events({0.5, 0.5}, e, std::nullopt, o);
  double worst = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) worst = std::max(worst, sup_distance(ts.states[i], traj.state_at(ts.times[i])));
  CHECK(worst <= 1e-6);
}

TEST_CASE("simulate_analytic: sigma = 0 stays linear but records regimes") {
  const GoodEconomy e{0.25, 0.0, 0.0, 0.1, 0.0};
  const auto traj = simulate_analytic({0.5, 0.5}, e, 10.0);
  CHECK(traj.segments.size() == 2);
  CHECK(traj.segments[1].regime == Regime::AExports);
  for (double t : {0.0, 1.0, 2.5, 7.0, 10.0}) {
    const auto s = traj.state_at(t);
    CHECK(s.eta_a == doctest::Approx(0.5 + 0.25 * t).epsilon(1e-14));
    CHECK(s.eta_b == doctest::Approx(0.5 - 0.1 * t).epsilon(1e-14));
  }
}

TEST_CASE("simulate_analytic: equilibrium gives one segment") {
  const GoodEconomy e{1.5, 0.5, 1.0, 1.0, 1.0};  // A holds 1.5, B balanced below threshold
  const auto traj = simulate_analytic({1.5, 0.4}, e, 50.0);
  REQUIRE(traj.segments.size() == 1);
  CHECK(traj.segments[0].t_end == 50.0);
  CHECK(traj.segments[0].regime == Regime::AExports);
}

TEST_CASE("simulate_analytic: a level on the guard follows its derivative") {
  const GoodEconomy up{1.0, 0.0, 0.5, 0.0, 1.0};
  auto traj = simulate_analytic({1.0, 0.5}, up, 1.0);
  CHECK(traj.segments.front().regime == Regime::AExports);

  const GoodEconomy down{0.0, 0.0, 0.5, 0.0, 1.0};
  traj = simulate_analytic({1.0, 0.5}, down, 1.0);
  CHECK(traj.segments.front().regime == Regime::NoExchange);
  CHECK(traj.segments.size() == 1);

  // Stationary on the guard: stays in the below branch.
  const GoodEconomy flat{0.5, 0.0, 0.5, 0.0, 1.0};
  traj = simulate_analytic({1.0, 0.5}, flat, 5.0);
  CHECK(traj.segments.size() == 1);
  CHECK(traj.state_at(5.0).eta_a == 1.0);
}

TEST_CASE("simulate_analytic: importer overshoot and return (non-monotone coordinate)") {
  // B imports, its level rises above 1 then A's exports fade and B's own deficit drains it.
  const GoodEconomy e{0.0, 0.0, 0.0, 0.3, 2.0};
  const NormalizedState s0{2.5, 0.9};
  const auto traj = simulate_analytic(s0, e, 20.0);
  SolverOptions o;
  o.horizon = 20.0;
  o.depletion_policy = DepletionPolicy::Continue;
  const auto ts = integrate_with_events(s0, e, std::nullopt, o);
  double worst = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) worst = std::max(worst, sup_distance(ts.states[i], traj.state_at(ts.times[i])));
  CHECK(worst <= 1e-6);
  CHECK(traj.segments.size() >= 3);
}

TEST_CASE("property: continuity, contiguity and conservation across switches") {
  test::Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    const auto e = random_economy(rng, 0.0);
    const NormalizedState s0{rng.uniform(0, 3), rng.uniform(0, 3)};
    const auto traj = simulate_analytic(s0, e, 10.0);
    for (std::size_t k = 0; k + 1 < traj.segments.size(); ++k) {
      CHECK(traj.segments[k].state_end == traj.segments[k + 1].state_start);
      CHECK(traj.segments[k].t_end == traj.segments[k + 1].t_start);
      CHECK(traj.segments[k].t_start < traj.segments[k].t_end);
    }
    CHECK(traj.segments.back().t_end == 10.0);
    const double p_sum = e.net_a() + e.net_b();
    for (double t = 0.0; t <= 10.0; t += 0.37) {
      const auto s = traj.state_at(t);
      CHECK(std::abs((s.eta_a + s.eta_b) - (s0.eta_a + s0.eta_b) - p_sum * t) <= 1e-9);
    }
  }
}

TEST_CASE("analytic money agrees with co-integrated money") {
  const GoodEconomy e{0.25, 0.1, 0.05, 0.3, 1.5};
  const PriceSet prices{1.0, 3.0, 2.0};
  const NormalizedState s0{0.6, 0.9};
  const MoneyState m0{10.0, 5.0};
  const auto traj = simulate_analytic(s0, e, 10.0);
  SolverOptions o;
  o.horizon = 10.0;
  o.depletion_policy = DepletionPolicy::Continue;
  const auto ts = integrate_with_events(s0, e, prices, o, m0);
  REQUIRE(ts.has_money());
  double worst = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto m = traj.money_at(ts.times[i], prices, m0);
    worst = std::max({worst, std::abs(m.m_a - ts.money[i].m_a), std::abs(m.m_b - ts.money[i].m_b)});
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("argument checks") {
  CHECK_THROWS(simulate_analytic({0.5, 0.5}, {}, 0.0));
  CHECK_THROWS(simulate_analytic({0.5, 0.5}, {}, 1.0, 0.0));
  CHECK_THROWS(simulate_analytic({0.5, 0.5}, {-1, 0, 0, 0, 0}, 1.0));
}
