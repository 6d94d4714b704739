#include "tradeflow/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tradeflow/exchange.hpp"

namespace tradeflow {

double ExpLinear::value(double t) const {
  if (amp == 0.0) return start + slope * t;
  return start + slope * t + amp * std::expm1(-rate * t);
}

double ExpLinear::derivative(double t) const {
  if (amp == 0.0) return slope;
  return slope - rate * amp * std::exp(-rate * t);
}

double ExpLinear::integral(double t) const {
  double v = start * t + 0.5 * slope * t * t;
  if (amp != 0.0 && rate > 0.0) {
    v += amp * (-std::expm1(-rate * t) / rate - t);
  }
  return v;
}

std::optional<double> ExpLinear::stationary_time() const {
  if (amp == 0.0 || !(rate > 0.0)) return std::nullopt;
  // slope = rate * amp * exp(-rate t)
  const double q = slope / (rate * amp);
  if (!(q > 0.0 && q < 1.0)) return std::nullopt;
  return -std::log(q) / rate;
}

NormalizedState RegimeSolution::at(double dt) const { return {eta_a.value(dt), eta_b.value(dt)}; }

double RegimeSolution::flow_integral(double dt) const {
  switch (regime) {
    case Regime::NoExchange: return 0.0;
    case Regime::AExports: return eta_a.integral(dt) - dt;
    case Regime::BExports: return dt - eta_b.integral(dt);
    case Regime::Bilateral: return eta_a.integral(dt) - eta_b.integral(dt);
  }
  return 0.0;
}

namespace {

RegimeSolution linear_solution(Regime regime, const NormalizedState& s0, const GoodEconomy& e) {
  return {regime, {s0.eta_a, e.net_a(), 0.0, 0.0}, {s0.eta_b, e.net_b(), 0.0, 0.0}};
}

// Exporter relaxes towards 1 + net/sigma; the importer absorbs the total net production.
RegimeSolution one_way_solution(Regime regime, double exporter0, double importer0, double net_exp, double net_imp,
                                double sigma, bool a_is_exporter) {
  const double target = (net_exp + sigma) / sigma;
  const double a2 = exporter0 - target;
  ExpLinear exporter{exporter0, 0.0, a2, sigma};
  ExpLinear importer{importer0, net_exp + net_imp, -a2, sigma};
  if (a_is_exporter) return {regime, exporter, importer};
  return {regime, importer, exporter};
}

RegimeSolution bilateral_solution(const NormalizedState& s0, const GoodEconomy& e) {
  const double p_sum = e.net_a() + e.net_b();
  const double p_diff = e.net_a() - e.net_b();
  const double d_star = p_diff / (2.0 * e.sigma);
  const double half_gap = 0.5 * ((s0.eta_a - s0.eta_b) - d_star);
  const double rate = 2.0 * e.sigma;
  return {Regime::Bilateral, {s0.eta_a, 0.5 * p_sum, half_gap, rate}, {s0.eta_b, 0.5 * p_sum, -half_gap, rate}};
}

void require_dt(double dt) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be finite and >= 0");
}

void require_sigma(const GoodEconomy& e, const char* who) {
  if (!(e.sigma > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": sigma must be > 0 (sigma == 0 is the no-exchange regime)");
  }
}

}  // namespace

RegimeSolution closed_form(Regime regime, const NormalizedState& s0, const GoodEconomy& e) {
  if (!(e.sigma > 0.0)) return linear_solution(regime, s0, e);
  switch (regime) {
    case Regime::NoExchange: return linear_solution(regime, s0, e);
    case Regime::AExports: return one_way_solution(regime, s0.eta_a, s0.eta_b, e.net_a(), e.net_b(), e.sigma, true);
    case Regime::BExports: return one_way_solution(regime, s0.eta_b, s0.eta_a, e.net_b(), e.net_a(), e.sigma, false);
    case Regime::Bilateral: return bilateral_solution(s0, e);
  }
  throw std::logic_error("unreachable regime");
}

NormalizedState solve_no_exchange(const NormalizedState& s0, const GoodEconomy& e, double dt) {
  require_dt(dt);
  return linear_solution(Regime::NoExchange, s0, e).at(dt);
}

NormalizedState solve_a_exports(const NormalizedState& s0, const GoodEconomy& e, double dt) {
  require_dt(dt);
  require_sigma(e, "solve_a_exports");
  return closed_form(Regime::AExports, s0, e).at(dt);
}

NormalizedState solve_b_exports(const NormalizedState& s0, const GoodEconomy& e, double dt) {
  require_dt(dt);
  require_sigma(e, "solve_b_exports");
  return closed_form(Regime::BExports, s0, e).at(dt);
}

NormalizedState solve_bilateral(const NormalizedState& s0, const GoodEconomy& e, double dt) {
  require_dt(dt);
  require_sigma(e, "solve_bilateral");
  return closed_form(Regime::Bilateral, s0, e).at(dt);
}

// ---------------------------------------------------------------------------

const RegimeSegment& PiecewiseTrajectory::segment_at(double t) const {
  if (segments.empty()) throw std::logic_error("empty trajectory");
  auto it = std::upper_bound(segments.begin(), segments.end(), t,
                             [](double v, const RegimeSegment& s) { return v < s.t_start; });
  if (it == segments.begin()) return segments.front();
  return *std::prev(it);
}

NormalizedState PiecewiseTrajectory::state_at(double t) const {
  const auto& seg = segment_at(t);
  if (t == seg.t_end) return seg.state_end;
  return seg.solution.at(t - seg.t_start);
}

Regime PiecewiseTrajectory::regime_at(double t) const { return segment_at(t).regime; }

MoneyState PiecewiseTrajectory::money_at(double t, const PriceSet& prices, const MoneyState& m0) const {
  const double base_a = -prices.x_a * econ.p_a + prices.y * econ.c_a;
  const double base_b = -prices.x_b * econ.p_b + prices.y * econ.c_b;
  const double gain = prices.y * econ.sigma;
  MoneyState m = m0;
  for (const auto& seg : segments) {
    if (seg.t_start >= t) break;
    const double dt = std::min(t, seg.t_end) - seg.t_start;
    const double flow = seg.solution.flow_integral(dt);
    m.m_a += base_a * dt + gain * flow;
    m.m_b += base_b * dt - gain * flow;
  }
  return m;
}

std::vector<double> PiecewiseTrajectory::event_times() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < segments.size(); ++i) out.push_back(segments[i].t_start);
  return out;
}

namespace {

bool side_of(double eta) { return eta > 1.0; }

// A level exactly on the guard goes to the side its derivative points to.
bool initial_side(double eta, double rate) {
  if (eta == 1.0) return rate > 0.0;
  return side_of(eta);
}

struct Crossing {
  double dt;
  bool found;
};

// Earliest dt in (0, span] where the coordinate leaves the side `above`.
Crossing find_crossing(const ExpLinear& x, bool above, double span, double tol) {
  std::array<double, 3> cuts{0.0, span, span};
  std::size_t n = 2;
  if (auto ts = x.stationary_time(); ts && *ts < span) {
    cuts = {0.0, *ts, span};
    n = 3;
  }
  for (std::size_t i = 1; i < n; ++i) {
    double lo = cuts[i - 1];
    double hi = cuts[i];
    if (side_of(x.value(hi)) == above) continue;
    int iter = 0;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (side_of(x.value(mid)) == above) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (++iter > 2000) {
        std::ostringstream os;
        os.precision(17);
        os << "event bisection did not converge: bracket [" << lo << ", " << hi << "], tol " << tol;
        throw EventLocalizationError(os.str());
      }
    }
    return {hi, true};
  }
  return {span, false};
}

}  // namespace

PiecewiseTrajectory simulate_analytic(const NormalizedState& state0, const GoodEconomy& econ, double horizon,
                                      double event_tol) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("horizon must be > 0");
  if (!(event_tol > 0.0)) throw std::invalid_argument("event_tol must be > 0");
  econ.validate();

  PiecewiseTrajectory traj;
  traj.horizon = horizon;
  traj.econ = econ;

  double t = 0.0;
  NormalizedState state = state0;
  const Rates r0 = rhs(state, econ);
  bool a_above = initial_side(state.eta_a, r0.deta_a);
  bool b_above = initial_side(state.eta_b, r0.deta_b);

  while (true) {
    if (traj.segments.size() >= kMaxSegments) {
      std::ostringstream os;
      os.precision(17);
      os << "regime chatter: more than " << kMaxSegments << " segments before t=" << t;
      throw EventLocalizationError(os.str());
    }
    const Regime regime = regime_from_sides(a_above, b_above);
    const RegimeSolution sol = closed_form(regime, state, econ);
    const double span = horizon - t;

    const Crossing ca = find_crossing(sol.eta_a, a_above, span, event_tol);
    const Crossing cb = find_crossing(sol.eta_b, b_above, span, event_tol);

    RegimeSegment seg{regime, t, horizon, state, state, sol};
    if (!ca.found && !cb.found) {
      seg.state_end = sol.at(span);
      traj.segments.push_back(seg);
      break;
    }
    const double dt = std::min(ca.found ? ca.dt : span, cb.found ? cb.dt : span);
    const NormalizedState next = sol.at(dt);
    seg.t_end = t + dt;
    seg.state_end = next;
    traj.segments.push_back(seg);

    const Rates rn = rhs(next, econ);
    if (side_of(next.eta_a) != a_above) a_above = initial_side(next.eta_a, rn.deta_a);
    if (side_of(next.eta_b) != b_above) b_above = initial_side(next.eta_b, rn.deta_b);
    t = seg.t_end;
    state = next;
    if (t >= horizon) {
      traj.segments.back().t_end = horizon;
      break;
    }
  }
  return traj;
}

}  // namespace tradeflow
