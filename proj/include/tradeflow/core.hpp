#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tradeflow {

/// Normalized stock levels of one good, in units of the exchange threshold.
/// Exchange activates for a country whose level exceeds 1.
struct NormalizedState {
  double eta_a{0.0};
  double eta_b{0.0};

  NormalizedState() = default;
  NormalizedState(double a, double b);

  [[nodiscard]] NormalizedState swapped() const { return {eta_b, eta_a}; }

  friend bool operator==(const NormalizedState&, const NormalizedState&) = default;
};

/// Per-good production, consumption and exchange coefficient, already
/// divided by the threshold height.
struct GoodEconomy {
  double p_a{0.0};
  double p_b{0.0};
  double c_a{0.0};
  double c_b{0.0};
  double sigma{0.0};

  [[nodiscard]] double net_a() const { return p_a - c_a; }
  [[nodiscard]] double net_b() const { return p_b - c_b; }
  [[nodiscard]] GoodEconomy swapped() const { return {p_b, p_a, c_b, c_a, sigma}; }

  /// Throws std::invalid_argument when any rate is negative or non-finite.
  void validate() const;

  /// Builds an economy from raw (un-normalized) rates by dividing by `h0`.
  static GoodEconomy from_raw(double p_a, double p_b, double c_a, double c_b, double sigma, double h0);

  friend bool operator==(const GoodEconomy&, const GoodEconomy&) = default;
};

NormalizedState normalize_heights(double h_a, double h_b, double h0);

enum class Regime { NoExchange, AExports, BExports, Bilateral };

std::string_view to_string(Regime r);
Regime regime_from_string(std::string_view s);

enum class Advantage { A, B, Neither };

/// Production costs in each country and the converged international price.
struct PriceSet {
  double x_a{0.0};
  double x_b{0.0};
  double y{0.0};

  /// Strict ordering: x_a < y < x_b is A-advantaged, x_b < y < x_a is B-advantaged.
  [[nodiscard]] Advantage advantage() const;

  friend bool operator==(const PriceSet&, const PriceSet&) = default;
};

struct MoneyState {
  double m_a{0.0};
  double m_b{0.0};

  friend bool operator==(const MoneyState&, const MoneyState&) = default;
};

/// Two goods with opposite comparative advantage: A exports good 1, B exports good 2.
struct TwoGoodScenario {
  GoodEconomy good1;
  GoodEconomy good2;
  PriceSet prices1;
  PriceSet prices2;
  double eta_a1{2.0};
  double eta_b2{2.0};

  friend bool operator==(const TwoGoodScenario&, const TwoGoodScenario&) = default;
};

/// Empty result means the scenario is valid.
std::vector<std::string> validate_scenario(const TwoGoodScenario& s);

std::vector<std::string> validate_economy(const GoodEconomy& e, std::string_view label);
std::vector<std::string> validate_prices(const PriceSet& p, std::string_view label);

}  // namespace tradeflow
