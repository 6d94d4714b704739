#include "tradeflow/region.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace tradeflow {

void GridSpec::validate() const {
  if (!(sigma1_min < sigma1_max)) throw std::invalid_argument("grid: sigma1_min must be < sigma1_max");
  if (!(eta_min < eta_max)) throw std::invalid_argument("grid: eta_min must be < eta_max");
  if (sigma1_steps < 2 || eta_steps < 2) throw std::invalid_argument("grid: steps must be >= 2");
  if (!(sigma1_min >= 0.0)) throw std::invalid_argument("grid: sigma1_min must be >= 0");
  if (!(eta_min >= 1.0)) throw std::invalid_argument("grid: eta_min must be >= 1");
}

namespace {

double lerp_node(double lo, double hi, std::size_t i, std::size_t n) {
  if (i == 0) return lo;
  if (i + 1 == n) return hi;
  const double u = static_cast<double>(i) / static_cast<double>(n - 1);
  return lo * (1.0 - u) + hi * u;
}

}  // namespace

double GridSpec::sigma1_at(std::size_t col) const { return lerp_node(sigma1_min, sigma1_max, col, sigma1_steps); }
double GridSpec::eta_at(std::size_t row) const { return lerp_node(eta_min, eta_max, row, eta_steps); }

std::size_t RegionMap::feasible_count() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const auto& c) { return c.feasible(); }));
}

std::size_t default_scan_threads() {
  if (const char* env = std::getenv("TRADEFLOW_THREADS"); env && *env) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RegionMap scan_region(const TwoGoodScenario& s, const GridSpec& grid, std::size_t threads) {
  grid.validate();
  RegionMap map{grid, std::vector<FeasibilityResult>(grid.sigma1_steps * grid.eta_steps)};

  auto scan_rows = [&s, &grid, &map](std::size_t row_begin, std::size_t row_end) {
    TwoGoodScenario local = s;
    for (std::size_t row = row_begin; row < row_end; ++row) {
      local.eta_a1 = grid.eta_at(row);
      for (std::size_t col = 0; col < grid.sigma1_steps; ++col) {
        map.cells[row * grid.sigma1_steps + col] = feasibility_check(local, grid.sigma1_at(col));
      }
    }
  };

  if (threads == 0) threads = default_scan_threads();
  threads = std::min(threads, grid.eta_steps);
  if (threads <= 1) {
    scan_rows(0, grid.eta_steps);
    return map;
  }

  std::vector<std::jthread> workers;
  workers.reserve(threads);
  const std::size_t chunk = (grid.eta_steps + threads - 1) / threads;
  for (std::size_t begin = 0; begin < grid.eta_steps; begin += chunk) {
    workers.emplace_back(scan_rows, begin, std::min(begin + chunk, grid.eta_steps));
  }
  workers.clear();
  return map;
}

KInterval feasible_k_interval(const TwoGoodScenario& s) {
  const auto m = margins(s);
  const double ratio = s.prices1.y / s.prices2.y;

  // Each constraint reads offset + slope * k >= 0.
  struct Linear {
    double offset;
    double slope;
  };
  const Linear constraints[] = {
      {m.alpha1 * s.good1.c_a + m.alpha2 * s.good2.c_a, m.alpha1 - m.alpha2 * ratio},  // dm_a >= 0
      {m.beta1 * s.good1.c_b + m.beta2 * s.good2.c_b, -m.beta1 + m.beta2 * ratio},     // dm_b >= 0
      {s.good2.c_a, -ratio},                                                           // P_A2 >= 0
      {s.good1.c_b, -1.0},                                                             // P_B1 >= 0
  };

  KInterval out;
  for (const auto& c : constraints) {
    if (c.slope > 0.0) {
      out.lo = std::max(out.lo, -c.offset / c.slope);
    } else if (c.slope < 0.0) {
      out.hi = std::min(out.hi, c.offset / -c.slope);
    } else if (c.offset < 0.0) {
      out.empty = true;
    }
  }
  if (out.lo > out.hi) out.empty = true;
  return out;
}

}  // namespace tradeflow
