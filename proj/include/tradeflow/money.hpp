#pragma once

#include "tradeflow/core.hpp"

namespace tradeflow {

struct MoneyRates {
  double dm_a{0.0};
  double dm_b{0.0};
};

/// Money rates of a single good at the A-exports fixed point eta_a_star. The
/// productions in `econ` are ignored and rebuilt from the fixed-point equations;
/// only c_a, c_b and sigma are read. Throws InfeasibleProduction if P_B < 0.
MoneyRates one_good_money_rates(const GoodEconomy& econ, const PriceSet& prices, double eta_a_star);

/// Price minus production cost per country and good. For a valid scenario the
/// sign pattern is alpha1 > 0, alpha2 < 0, beta1 < 0, beta2 > 0.
struct MarginCoefficients {
  double alpha1{0.0};
  double alpha2{0.0};
  double beta1{0.0};
  double beta2{0.0};
};

MarginCoefficients margins(const TwoGoodScenario& s);

/// Exchange coefficient of good 2 that zeroes both countries' total trade balance.
/// Throws std::invalid_argument unless eta_a1 > 1, eta_b2 > 1 and y2 > 0.
double balanced_sigma2(double sigma1, double eta_a1, double eta_b2, double y1, double y2);

struct TradeBalances {
  double b_a1{0.0};
  double b_a2{0.0};
  double b_b1{0.0};
  double b_b2{0.0};
};

/// Currency value of net exports per good, at s.eta_a1 and s.eta_b2.
TradeBalances trade_balances(const TwoGoodScenario& s, double sigma1, double sigma2);

struct FeasibilityResult {
  bool money_a_ok{false};
  bool money_b_ok{false};
  bool prod_a2_ok{false};
  bool prod_b1_ok{false};
  double k{0.0};
  double dm_a{0.0};
  double dm_b{0.0};
  double p_a1{0.0};
  double p_a2{0.0};
  double p_b1{0.0};
  double p_b2{0.0};

  [[nodiscard]] bool feasible() const { return money_a_ok && money_b_ok && prod_a2_ok && prod_b1_ok; }

  friend bool operator==(const FeasibilityResult&, const FeasibilityResult&) = default;
};

/// Exported volume of good 1, k = sigma1 (eta_a1 - 1). With the good-2 exchange
/// tied to good 1 by the balance relation, every two-good quantity depends on k only.
double export_volume(double sigma1, double eta_a1);

/// Two-good productions and money rates as functions of k alone. Negative
/// productions are reported as computed, not clipped.
FeasibilityResult evaluate_at_k(const TwoGoodScenario& s, double k);

/// evaluate_at_k at k = export_volume(sigma1, s.eta_a1).
FeasibilityResult two_good_money_rates(const TwoGoodScenario& s, double sigma1);

/// Same as two_good_money_rates; all four inequalities are non-strict.
FeasibilityResult feasibility_check(const TwoGoodScenario& s, double sigma1);

}  // namespace tradeflow
