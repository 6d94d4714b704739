#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tradeflow/core.hpp"
#include "tradeflow/integrator.hpp"
#include "tradeflow/region.hpp"

namespace tradeflow {

enum class ModelKind { OneGood, TwoGood };

/// In-memory form of a scenario file. All values are normalized (h0 = 1).
///
/// Sections: [model] kind, h0; [good1]/[good2] p_a, p_b, c_a, c_b, sigma, eta_star;
/// [prices1]/[prices2] x_a, x_b, y; [initial] eta_a, eta_b, m_a, m_b;
/// [solver] step, event_tol, horizon, depletion_policy; [grid] sigma1_min,
/// sigma1_max, sigma1_steps, eta_min, eta_max, eta_steps.
///
/// When eta_star is given for a good, its productions come from the fixed-point
/// equations and p_a/p_b must be omitted. For good2 of a two-good model eta_star
/// is the B-side level eta_b2.
struct Scenario {
  ModelKind kind{ModelKind::OneGood};
  GoodEconomy good1;
  std::optional<double> eta_star1;
  std::optional<PriceSet> prices1;
  GoodEconomy good2;
  std::optional<double> eta_star2;
  std::optional<PriceSet> prices2;
  std::optional<NormalizedState> initial;
  MoneyState money0;
  SolverOptions solver;
  std::optional<GridSpec> grid;

  /// Two-good view; eta_a1 and eta_b2 default to 2 when eta_star is absent.
  [[nodiscard]] TwoGoodScenario two_good() const;
  /// Initial state, defaulting to (eta_star1, 1) for a fixed-point good.
  [[nodiscard]] std::optional<NormalizedState> initial_state() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Carries every diagnostic found, each prefixed with its source location.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<std::string> diagnostics);
  [[nodiscard]] const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

Scenario parse_scenario_text(const std::string& text, const std::string& origin = "<string>");
Scenario parse_scenario(const std::filesystem::path& path);

std::string serialize_scenario(const Scenario& s);

/// 17 significant digits, the form used in every data file.
std::string format_double(double v);

}  // namespace tradeflow
