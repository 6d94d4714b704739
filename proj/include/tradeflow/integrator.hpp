#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tradeflow/core.hpp"

namespace tradeflow {

enum class DepletionPolicy { Continue, ClampToZero, Halt };

std::string_view to_string(DepletionPolicy p);
DepletionPolicy depletion_policy_from_string(std::string_view s);

struct SolverOptions {
  double step{1e-3};
  double event_tol{1e-10};
  double horizon{10.0};
  DepletionPolicy depletion_policy{DepletionPolicy::Halt};

  /// Throws std::invalid_argument on non-positive values or step > horizon.
  void validate() const;

  friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

enum class EventKind { GuardCrossing, Depletion };

struct Event {
  double t{0.0};
  EventKind kind{EventKind::GuardCrossing};
  std::string description;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<NormalizedState> states;
  std::vector<Regime> regimes;
  /// Empty unless prices were supplied.
  std::vector<MoneyState> money;
  std::vector<Event> events;
  bool halted{false};

  [[nodiscard]] std::size_t size() const { return times.size(); }
  [[nodiscard]] bool has_money() const { return !money.empty(); }
};

/// One classical fourth-order Runge-Kutta step of the autonomous stock dynamics.
NormalizedState rk4_step(const NormalizedState& state, const GoodEconomy& econ, double h);

/// Money rates: spend x per unit produced, earn y per unit consumed at home plus net exports.
MoneyState money_rates(const NormalizedState& state, const GoodEconomy& econ, const PriceSet& prices);

/// Fixed-step RK4 with guard-crossing (eta = 1) and depletion (eta < 0) detection.
/// A crossing inside a step is bisected on the sub-step length down to `event_tol`
/// and integration restarts from the state just past the crossing. Samples are
/// recorded at every accepted step and at every event.
TimeSeries integrate_with_events(const NormalizedState& state0, const GoodEconomy& econ,
                                 const std::optional<PriceSet>& prices, const SolverOptions& opts,
                                 const MoneyState& money0 = {});

}  // namespace tradeflow
