#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "tradeflow/analytic.hpp"
#include "tradeflow/integrator.hpp"
#include "tradeflow/region.hpp"
#include "tradeflow/scenario.hpp"

namespace tradeflow {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInput = 1;
inline constexpr int kNumerical = 2;
inline constexpr int kDepletion = 3;
}  // namespace exit_code

/// Sup-norm tolerance between the closed-form and numeric trajectories.
inline constexpr double kCompareTolerance = 1e-6;

enum class SimulateMode { Analytic, Numeric, Both };

struct SimulateOptions {
  SimulateMode mode{SimulateMode::Both};
  std::string out;  // empty: table goes to stdout
  bool plot{false};
};

struct RegionOptions {
  std::string out;
  bool plot{false};
  std::size_t threads{0};
};

// CSV writers. Columns are fixed; doubles use format_double().
void write_time_series_csv(std::ostream& os, const TimeSeries& ts);
void write_region_csv(std::ostream& os, const RegionMap& map);

/// Samples a closed-form trajectory on the step grid plus every regime switch.
TimeSeries sample_trajectory(const PiecewiseTrajectory& traj, double step, const std::optional<PriceSet>& prices,
                             const MoneyState& money0);

int cmd_simulate(const Scenario& s, const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_fixed_point(const Scenario& s, std::optional<double> eta_star, std::ostream& out, std::ostream& err);
int cmd_region(const Scenario& s, const RegionOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace tradeflow
