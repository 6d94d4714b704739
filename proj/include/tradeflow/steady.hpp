#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tradeflow/core.hpp"

namespace tradeflow {

struct FixedPointProduction {
  double p_a{0.0};
  double p_b{0.0};
};

/// Raised when a fixed point would need negative production from the importer.
struct InfeasibleProduction : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Productions that hold country A at eta_a_star while B sits at or below the
/// threshold: P_A = C_A + sigma (eta* - 1), P_B = C_B - sigma (eta* - 1).
/// eta* = 1 is the no-exchange limit. Throws std::invalid_argument for eta* < 1
/// and InfeasibleProduction when sigma (eta* - 1) > C_B.
FixedPointProduction fixed_point_production(double eta_a_star, double c_a, double c_b, double sigma);

/// Economy whose A-exports fixed point sits at eta_a_star.
GoodEconomy fixed_point_economy(double eta_a_star, double c_a, double c_b, double sigma);

bool is_steady_state(const NormalizedState& state, const GoodEconomy& econ, double tol);

struct RegimeEquilibrium {
  Regime regime{Regime::NoExchange};
  /// A stationary point of the full system exists inside this regime's region.
  bool stationary{false};
  /// Attracting value of the contracting coordinate: eta_a* (AExports), eta_b* (BExports),
  /// eta_a - eta_b (Bilateral). Absent for NoExchange.
  std::optional<double> attractor;
  /// Contraction rate of that coordinate: sigma for one-way export, 2 sigma bilateral.
  double contraction_rate{0.0};
  std::string description;
};

/// Per-regime stationary analysis. `tol` bounds |net production| treated as zero.
std::vector<RegimeEquilibrium> regime_equilibria(const GoodEconomy& econ, double tol = 1e-12);

}  // namespace tradeflow
