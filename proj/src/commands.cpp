#include "tradeflow/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tradeflow/exchange.hpp"
#include "tradeflow/money.hpp"
#include "tradeflow/steady.hpp"

namespace tradeflow {

void write_time_series_csv(std::ostream& os, const TimeSeries& ts) {
  os << "t,eta_a,eta_b,regime,f";
  if (ts.has_money()) os << ",m_a,m_b";
  os << '\n';
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& s = ts.states[i];
    os << format_double(ts.times[i]) << ',' << format_double(s.eta_a) << ',' << format_double(s.eta_b) << ','
       << to_string(ts.regimes[i]) << ',' << format_double(exchange_flow(s));
    if (ts.has_money()) os << ',' << format_double(ts.money[i].m_a) << ',' << format_double(ts.money[i].m_b);
    os << '\n';
  }
}

void write_region_csv(std::ostream& os, const RegionMap& map) {
  os << "sigma1,eta_a1,k,dm_a,dm_b,p_a2,p_b1,feasible\n";
  for (std::size_t row = 0; row < map.grid.eta_steps; ++row) {
    for (std::size_t col = 0; col < map.grid.sigma1_steps; ++col) {
      const auto& c = map.at(row, col);
      os << format_double(map.grid.sigma1_at(col)) << ',' << format_double(map.grid.eta_at(row)) << ','
         << format_double(c.k) << ',' << format_double(c.dm_a) << ',' << format_double(c.dm_b) << ','
         << format_double(c.p_a2) << ',' << format_double(c.p_b1) << ',' << (c.feasible() ? 1 : 0) << '\n';
    }
  }
}

TimeSeries sample_trajectory(const PiecewiseTrajectory& traj, double step, const std::optional<PriceSet>& prices,
                             const MoneyState& money0) {
  std::vector<double> times;
  const auto n = static_cast<long long>(std::floor(traj.horizon / step));
  for (long long i = 0; i <= n; ++i) times.push_back(static_cast<double>(i) * step);
  if (times.back() < traj.horizon) times.push_back(traj.horizon);
  for (double t : traj.event_times()) times.push_back(t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  TimeSeries ts;
  for (double t : times) {
    ts.times.push_back(t);
    ts.states.push_back(traj.state_at(t));
    ts.regimes.push_back(traj.regime_at(t));
    if (prices) ts.money.push_back(traj.money_at(t, *prices, money0));
  }
  for (std::size_t i = 1; i < traj.segments.size(); ++i) {
    const auto& seg = traj.segments[i];
    ts.events.push_back({seg.t_start, EventKind::GuardCrossing,
                         std::string("regime ") + std::string(to_string(traj.segments[i - 1].regime)) + " -> " +
                             std::string(to_string(seg.regime))});
  }
  return ts;
}

namespace {

bool write_file(const std::string& path, const std::string& what, std::ostream& err, auto&& writer) {
  std::ofstream f(path);
  if (!f) {
    err << "error: cannot write " << what << " to " << path << '\n';
    return false;
  }
  writer(f);
  return static_cast<bool>(f);
}

void write_series_plot(std::ostream& os, const std::string& data, bool money) {
  os << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set xlabel 't'\n"
     << "set ylabel 'normalized stock'\n"
     << "plot '" << data << "' using 1:2 with lines title 'eta_a', \\\n"
     << "     '" << data << "' using 1:3 with lines title 'eta_b', \\\n"
     << "     1 with lines dashtype 2 title 'threshold'\n";
  if (money) {
    os << "pause -1\n"
       << "set ylabel 'money'\n"
       << "plot '" << data << "' using 1:6 with lines title 'm_a', \\\n"
       << "     '" << data << "' using 1:7 with lines title 'm_b'\n";
  }
}

void write_region_plot(std::ostream& os, const std::string& data) {
  os << "set datafile separator ','\n"
     << "set xlabel 'sigma_1'\n"
     << "set ylabel 'eta_{A1}'\n"
     << "plot '" << data << "' every ::1 using 1:($8 > 0 ? $2 : 1/0) with points pt 7 ps 0.3 title 'feasible'\n";
}

void print_events(std::ostream& out, const TimeSeries& ts) {
  for (const auto& e : ts.events) {
    out << "event t=" << format_double(e.t) << ' ' << (e.kind == EventKind::Depletion ? "depletion" : "crossing")
        << ": " << e.description << '\n';
  }
}

}  // namespace

int cmd_simulate(const Scenario& s, const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  if (s.kind != ModelKind::OneGood) {
    err << "error: simulate needs a one-good scenario\n";
    return exit_code::kInput;
  }
  const auto state0 = s.initial_state();
  if (!state0) {
    err << "error: simulate needs [initial] eta_a/eta_b (or good1.eta_star)\n";
    return exit_code::kInput;
  }
  if (opts.plot && opts.out.empty()) {
    err << "error: --plot requires --out\n";
    return exit_code::kInput;
  }

  try {
    s.solver.validate();
    const GoodEconomy& econ = s.good1;

    std::optional<PiecewiseTrajectory> traj;
    std::optional<TimeSeries> numeric;
    if (opts.mode != SimulateMode::Numeric) {
      traj = simulate_analytic(*state0, econ, s.solver.horizon, s.solver.event_tol);
    }
    if (opts.mode != SimulateMode::Analytic) {
      numeric = integrate_with_events(*state0, econ, s.prices1, s.solver, s.money0);
    }

    const TimeSeries series = numeric ? *numeric : sample_trajectory(*traj, s.solver.step, s.prices1, s.money0);

    if (opts.out.empty()) {
      write_time_series_csv(out, series);
    } else {
      if (!write_file(opts.out, "time series", err, [&](std::ostream& f) { write_time_series_csv(f, series); })) {
        return exit_code::kInput;
      }
      if (opts.plot) {
        write_file(opts.out + ".gp", "plot script", err,
                   [&](std::ostream& f) { write_series_plot(f, opts.out, series.has_money()); });
      }
    }
    print_events(opts.out.empty() ? err : out, series);

    int code = exit_code::kOk;
    if (opts.mode == SimulateMode::Both) {
      double sup = 0.0;
      auto compare = [&](std::ostream& f) {
        f << "t,eta_a_numeric,eta_b_numeric,eta_a_analytic,eta_b_analytic,discrepancy\n";
        for (std::size_t i = 0; i < numeric->size(); ++i) {
          const double t = numeric->times[i];
          const auto& n = numeric->states[i];
          const auto a = traj->state_at(t);
          const double d = std::max(std::abs(n.eta_a - a.eta_a), std::abs(n.eta_b - a.eta_b));
          sup = std::max(sup, d);
          f << format_double(t) << ',' << format_double(n.eta_a) << ',' << format_double(n.eta_b) << ','
            << format_double(a.eta_a) << ',' << format_double(a.eta_b) << ',' << format_double(d) << '\n';
        }
      };
      if (opts.out.empty()) {
        std::ostringstream sink;
        compare(sink);
      } else if (!write_file(opts.out + ".compare.csv", "comparison", err, compare)) {
        return exit_code::kInput;
      }
      (opts.out.empty() ? err : out) << "sup-norm discrepancy: " << format_double(sup) << '\n';
      if (!(sup <= kCompareTolerance)) {
        err << "error: analytic and numeric trajectories differ by " << format_double(sup) << " > "
            << format_double(kCompareTolerance) << '\n';
        code = exit_code::kNumerical;
      }
    }
    if (numeric && numeric->halted) {
      err << "depletion halt at t=" << format_double(numeric->events.back().t) << '\n';
      if (code == exit_code::kOk) code = exit_code::kDepletion;
    }
    return code;
  } catch (const EventLocalizationError& e) {
    err << "numerical error: " << e.what() << '\n';
    return exit_code::kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kInput;
  }
}

int cmd_fixed_point(const Scenario& s, std::optional<double> eta_star, std::ostream& out, std::ostream& err) {
  if (s.kind != ModelKind::OneGood) {
    err << "error: fixed-point needs a one-good scenario\n";
    return exit_code::kInput;
  }
  const auto eta = eta_star ? eta_star : s.eta_star1;
  if (!eta) {
    err << "error: no fixed point given (use --eta-star or good1.eta_star)\n";
    return exit_code::kInput;
  }
  if (!s.prices1) {
    err << "error: fixed-point needs [prices1]\n";
    return exit_code::kInput;
  }
  const GoodEconomy& g = s.good1;
  try {
    const auto p = fixed_point_production(*eta, g.c_a, g.c_b, g.sigma);
    const auto m = one_good_money_rates(g, *s.prices1, *eta);
    const double threshold = g.sigma * excess(*eta);
    out << "eta_star," << format_double(*eta) << '\n'
        << "p_a," << format_double(p.p_a) << '\n'
        << "p_b," << format_double(p.p_b) << '\n'
        << "dm_a," << format_double(m.dm_a) << '\n'
        << "dm_b," << format_double(m.dm_b) << '\n'
        << "export_rate," << format_double(threshold) << '\n'
        << "c_b," << format_double(g.c_b) << '\n'
        << "stop_production_threshold," << (threshold == g.c_b ? "met" : "not met") << '\n';
    return exit_code::kOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kInput;
  }
}

int cmd_region(const Scenario& s, const RegionOptions& opts, std::ostream& out, std::ostream& err) {
  if (s.kind != ModelKind::TwoGood) {
    err << "error: region needs a two-good scenario\n";
    return exit_code::kInput;
  }
  if (opts.plot && opts.out.empty()) {
    err << "error: --plot requires --out\n";
    return exit_code::kInput;
  }
  const TwoGoodScenario two = s.two_good();
  if (auto issues = validate_scenario(two); !issues.empty()) {
    for (const auto& i : issues) err << "error: " << i << '\n';
    return exit_code::kInput;
  }
  const GridSpec grid = s.grid.value_or(GridSpec{});
  try {
    const RegionMap map = scan_region(two, grid, opts.threads);
    const KInterval interval = feasible_k_interval(two);

    if (opts.out.empty()) {
      write_region_csv(out, map);
    } else {
      if (!write_file(opts.out, "region table", err, [&](std::ostream& f) { write_region_csv(f, map); })) {
        return exit_code::kInput;
      }
      if (opts.plot) {
        write_file(opts.out + ".gp", "plot script", err, [&](std::ostream& f) { write_region_plot(f, opts.out); });
      }
    }

    std::ostream& summary = opts.out.empty() ? err : out;
    if (interval.empty) {
      summary << "feasible k interval: empty\n";
    } else {
      summary << "feasible k interval: [" << format_double(interval.lo) << ", " << format_double(interval.hi) << "]\n";
    }
    std::size_t mismatches = 0;
    for (const auto& c : map.cells) {
      if (c.feasible() != interval.contains(c.k)) ++mismatches;
    }
    const std::size_t feasible = map.feasible_count();
    summary << "feasible nodes: " << feasible << " of " << map.cells.size() << '\n';
    if (feasible == 0) summary << "empty region\n";
    if (mismatches > 0) {
      err << "error: scanner and closed-form interval disagree at " << mismatches << " node(s)\n";
      return exit_code::kNumerical;
    }
    return exit_code::kOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kInput;
  }
}

}  // namespace tradeflow
