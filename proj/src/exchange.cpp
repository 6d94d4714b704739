#include "tradeflow/exchange.hpp"

namespace tradeflow {

double exchange_flow(const NormalizedState& state) {
  return excess(state.eta_a) - excess(state.eta_b);
}

Regime regime_from_sides(bool a_above, bool b_above) {
  if (a_above && b_above) return Regime::Bilateral;
  if (a_above) return Regime::AExports;
  if (b_above) return Regime::BExports;
  return Regime::NoExchange;
}

Regime classify_regime(const NormalizedState& state) {
  return regime_from_sides(state.eta_a > 1.0, state.eta_b > 1.0);
}

Rates rhs(const NormalizedState& state, const GoodEconomy& econ) {
  // Grouped so that productions built as c + flow (or c - flow) cancel exactly.
  const double flow = econ.sigma * exchange_flow(state);
  return {econ.p_a - (econ.c_a + flow), econ.p_b - (econ.c_b - flow)};
}

}  // namespace tradeflow
