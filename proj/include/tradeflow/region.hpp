#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "tradeflow/core.hpp"
#include "tradeflow/money.hpp"

namespace tradeflow {

struct GridSpec {
  double sigma1_min{0.5};
  double sigma1_max{10.0};
  std::size_t sigma1_steps{200};
  double eta_min{1.5};
  double eta_max{10.0};
  std::size_t eta_steps{200};

  void validate() const;

  /// Node coordinates interpolate the endpoints directly, so both ends are exact.
  [[nodiscard]] double sigma1_at(std::size_t col) const;
  [[nodiscard]] double eta_at(std::size_t row) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Row index runs over eta_a1, column index over sigma1.
struct RegionMap {
  GridSpec grid;
  std::vector<FeasibilityResult> cells;

  [[nodiscard]] const FeasibilityResult& at(std::size_t row, std::size_t col) const {
    return cells[row * grid.sigma1_steps + col];
  }
  [[nodiscard]] std::size_t feasible_count() const;
};

/// Thread count from TRADEFLOW_THREADS, else hardware concurrency (at least 1).
std::size_t default_scan_threads();

/// Evaluates feasibility_check at every node. Rows are split across `threads`
/// workers (0 means default_scan_threads()); each writes disjoint cells.
RegionMap scan_region(const TwoGoodScenario& s, const GridSpec& grid, std::size_t threads = 0);

/// Closed interval of feasible export volumes k >= 0; hi may be +inf.
struct KInterval {
  double lo{0.0};
  double hi{std::numeric_limits<double>::infinity()};
  bool empty{false};

  [[nodiscard]] bool contains(double k) const { return !empty && k >= lo && k <= hi; }
};

/// Intersects the four constraints, each linear in k, with k >= 0.
KInterval feasible_k_interval(const TwoGoodScenario& s);

}  // namespace tradeflow
