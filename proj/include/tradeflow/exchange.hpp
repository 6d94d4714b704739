#pragma once

#include "tradeflow/core.hpp"

namespace tradeflow {

struct Rates {
  double deta_a{0.0};
  double deta_b{0.0};
};

/// Excess of a stock above the threshold, zero at or below it.
inline double excess(double eta) { return eta > 1.0 ? eta - 1.0 : 0.0; }

/// f(eta_a, eta_b): positive when A ships to B. Continuous in both arguments.
double exchange_flow(const NormalizedState& state);

/// A level of exactly 1 counts as below the threshold.
Regime classify_regime(const NormalizedState& state);

Regime regime_from_sides(bool a_above, bool b_above);

Rates rhs(const NormalizedState& state, const GoodEconomy& econ);

}  // namespace tradeflow
