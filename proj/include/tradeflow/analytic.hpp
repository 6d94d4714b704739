#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tradeflow/core.hpp"

namespace tradeflow {

/// One stock coordinate of a regime solution, anchored at its initial value:
///   x(t) = start + slope * t + amp * (exp(-rate * t) - 1)
/// Every regime of the model has both coordinates of this form.
struct ExpLinear {
  double start{0.0};
  double slope{0.0};
  double amp{0.0};
  double rate{0.0};

  [[nodiscard]] double value(double t) const;
  [[nodiscard]] double derivative(double t) const;
  /// Integral of value() over [0, t].
  [[nodiscard]] double integral(double t) const;
  /// Interior time where derivative() vanishes, if any lies in (0, inf).
  [[nodiscard]] std::optional<double> stationary_time() const;
};

/// Closed-form solution of one regime from a given initial state.
struct RegimeSolution {
  Regime regime{Regime::NoExchange};
  ExpLinear eta_a;
  ExpLinear eta_b;

  [[nodiscard]] NormalizedState at(double dt) const;
  /// Integral of the exchange function f over [0, dt].
  [[nodiscard]] double flow_integral(double dt) const;
};

/// Builds the closed form for `regime` starting at `state0`. With sigma == 0 every
/// regime degenerates to the decoupled linear solution.
RegimeSolution closed_form(Regime regime, const NormalizedState& state0, const GoodEconomy& econ);

NormalizedState solve_no_exchange(const NormalizedState& state0, const GoodEconomy& econ, double dt);
/// Throws std::invalid_argument when sigma <= 0 or dt < 0.
NormalizedState solve_a_exports(const NormalizedState& state0, const GoodEconomy& econ, double dt);
NormalizedState solve_b_exports(const NormalizedState& state0, const GoodEconomy& econ, double dt);
/// Uses total/difference coordinates: the total grows linearly (zero eigenvalue),
/// the difference relaxes at rate 2*sigma towards (net_a - net_b) / (2*sigma).
NormalizedState solve_bilateral(const NormalizedState& state0, const GoodEconomy& econ, double dt);

struct RegimeSegment {
  Regime regime{Regime::NoExchange};
  double t_start{0.0};
  double t_end{0.0};
  NormalizedState state_start;
  NormalizedState state_end;
  RegimeSolution solution;
};

/// Thrown when event localization cannot make progress or chatter exceeds the segment cap.
struct EventLocalizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PiecewiseTrajectory {
  std::vector<RegimeSegment> segments;
  double horizon{0.0};
  GoodEconomy econ;

  [[nodiscard]] const RegimeSegment& segment_at(double t) const;
  [[nodiscard]] NormalizedState state_at(double t) const;
  [[nodiscard]] Regime regime_at(double t) const;
  /// Money holdings at time t, co-integrated with the same rule as the numeric integrator.
  [[nodiscard]] MoneyState money_at(double t, const PriceSet& prices, const MoneyState& m0) const;
  /// Segment boundary times (regime switches), excluding 0 and the horizon.
  [[nodiscard]] std::vector<double> event_times() const;
};

inline constexpr std::size_t kMaxSegments = 1'000'000;

/// Chains closed-form regime solutions over [0, horizon]. Guard crossings are
/// bracketed on monotone pieces and bisected to `event_tol`; the state at the upper
/// end of the bracket starts the next segment. A level sitting exactly on the
/// threshold is assigned to the side its time derivative points to.
PiecewiseTrajectory simulate_analytic(const NormalizedState& state0, const GoodEconomy& econ, double horizon,
                                      double event_tol = 1e-10);

}  // namespace tradeflow
