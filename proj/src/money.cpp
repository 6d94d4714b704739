#include "tradeflow/money.hpp"

#include <stdexcept>

#include "tradeflow/exchange.hpp"
#include "tradeflow/steady.hpp"

namespace tradeflow {

MoneyRates one_good_money_rates(const GoodEconomy& econ, const PriceSet& prices, double eta_a_star) {
  const auto p = fixed_point_production(eta_a_star, econ.c_a, econ.c_b, econ.sigma);
  const double export_rate = econ.sigma * excess(eta_a_star);
  return {-prices.x_a * p.p_a + prices.y * (econ.c_a + export_rate),
          -prices.x_b * p.p_b + prices.y * (econ.c_b - export_rate)};
}

MarginCoefficients margins(const TwoGoodScenario& s) {
  return {s.prices1.y - s.prices1.x_a, s.prices2.y - s.prices2.x_a, s.prices1.y - s.prices1.x_b,
          s.prices2.y - s.prices2.x_b};
}

double balanced_sigma2(double sigma1, double eta_a1, double eta_b2, double y1, double y2) {
  if (!(eta_a1 > 1.0)) throw std::invalid_argument("balanced_sigma2: eta_a1 must be > 1");
  if (!(eta_b2 > 1.0)) throw std::invalid_argument("balanced_sigma2: eta_b2 must be > 1");
  if (!(y2 > 0.0)) throw std::invalid_argument("balanced_sigma2: y2 must be > 0");
  return (eta_a1 - 1.0) / (eta_b2 - 1.0) * (y1 / y2) * sigma1;
}

TradeBalances trade_balances(const TwoGoodScenario& s, double sigma1, double sigma2) {
  const double out1 = s.prices1.y * sigma1 * (s.eta_a1 - 1.0);
  const double out2 = s.prices2.y * sigma2 * (s.eta_b2 - 1.0);
  return {out1, -out2, -out1, out2};
}

double export_volume(double sigma1, double eta_a1) { return sigma1 * (eta_a1 - 1.0); }

FeasibilityResult evaluate_at_k(const TwoGoodScenario& s, double k) {
  const auto m = margins(s);
  // Good-2 volume sigma2 (eta_b2 - 1) after the balance relation.
  const double k2 = k * (s.prices1.y / s.prices2.y);

  FeasibilityResult r;
  r.k = k;
  r.p_a1 = s.good1.c_a + k;
  r.p_b1 = s.good1.c_b - k;
  r.p_a2 = s.good2.c_a - k2;
  r.p_b2 = s.good2.c_b + k2;
  r.dm_a = m.alpha1 * r.p_a1 + m.alpha2 * r.p_a2;
  r.dm_b = m.beta1 * r.p_b1 + m.beta2 * r.p_b2;
  r.money_a_ok = r.dm_a >= 0.0;
  r.money_b_ok = r.dm_b >= 0.0;
  r.prod_a2_ok = r.p_a2 >= 0.0;
  r.prod_b1_ok = r.p_b1 >= 0.0;
  return r;
}

FeasibilityResult two_good_money_rates(const TwoGoodScenario& s, double sigma1) {
  if (!(sigma1 >= 0.0)) throw std::invalid_argument("sigma1 must be >= 0");
  return evaluate_at_k(s, export_volume(sigma1, s.eta_a1));
}

FeasibilityResult feasibility_check(const TwoGoodScenario& s, double sigma1) { return two_good_money_rates(s, sigma1); }

}  // namespace tradeflow
