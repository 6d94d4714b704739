#include "tradeflow/integrator.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tradeflow/exchange.hpp"

namespace tradeflow {

std::string_view to_string(DepletionPolicy p) {
  switch (p) {
    case DepletionPolicy::Continue: return "continue";
    case DepletionPolicy::ClampToZero: return "clamp";
    case DepletionPolicy::Halt: return "halt";
  }
  return "?";
}

DepletionPolicy depletion_policy_from_string(std::string_view s) {
  for (auto p : {DepletionPolicy::Continue, DepletionPolicy::ClampToZero, DepletionPolicy::Halt}) {
    if (to_string(p) == s) return p;
  }
  throw std::invalid_argument("unknown depletion policy '" + std::string(s) + "' (expected continue, clamp or halt)");
}

void SolverOptions::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("solver.step must be > 0");
  if (!(event_tol > 0.0) || !std::isfinite(event_tol)) throw std::invalid_argument("solver.event_tol must be > 0");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("solver.horizon must be > 0");
  if (step > horizon) throw std::invalid_argument("solver.step exceeds solver.horizon");
}

namespace {

// eta_a, eta_b, m_a, m_b
using Vec = std::array<double, 4>;

struct Field {
  const GoodEconomy& econ;
  const PriceSet* prices;

  Vec operator()(const Vec& v) const {
    const NormalizedState s{v[0], v[1]};
    const Rates r = rhs(s, econ);
    Vec d{r.deta_a, r.deta_b, 0.0, 0.0};
    if (prices) {
      const MoneyState m = money_rates(s, econ, *prices);
      d[2] = m.m_a;
      d[3] = m.m_b;
    }
    return d;
  }
};

Vec axpy(const Vec& x, double a, const Vec& y) {
  Vec out;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * y[i];
  return out;
}

Vec rk4(const Field& f, const Vec& v, double h) {
  const Vec k1 = f(v);
  const Vec k2 = f(axpy(v, 0.5 * h, k1));
  const Vec k3 = f(axpy(v, 0.5 * h, k2));
  const Vec k4 = f(axpy(v, h, k3));
  Vec out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

struct Sides {
  bool a_above;
  bool b_above;
  bool a_neg;
  bool b_neg;

  static Sides of(const Vec& v) { return {v[0] > 1.0, v[1] > 1.0, v[0] < 0.0, v[1] < 0.0}; }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

MoneyState money_rates(const NormalizedState& state, const GoodEconomy& econ, const PriceSet& prices) {
  const double flow = econ.sigma * exchange_flow(state);
  return {-prices.x_a * econ.p_a + prices.y * (econ.c_a + flow),
          -prices.x_b * econ.p_b + prices.y * (econ.c_b - flow)};
}

NormalizedState rk4_step(const NormalizedState& state, const GoodEconomy& econ, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("rk4_step: h must be > 0");
  const Vec v = rk4(Field{econ, nullptr}, Vec{state.eta_a, state.eta_b, 0.0, 0.0}, h);
  return {v[0], v[1]};
}

TimeSeries integrate_with_events(const NormalizedState& state0, const GoodEconomy& econ,
                                 const std::optional<PriceSet>& prices, const SolverOptions& opts,
                                 const MoneyState& money0) {
  opts.validate();
  econ.validate();

  const Field field{econ, prices ? &*prices : nullptr};
  const bool watch_depletion = opts.depletion_policy == DepletionPolicy::Halt;

  TimeSeries ts;
  auto record = [&](double t, const Vec& v) {
    const NormalizedState s{v[0], v[1]};
    ts.times.push_back(t);
    ts.states.push_back(s);
    ts.regimes.push_back(classify_regime(s));
    if (prices) ts.money.push_back({v[2], v[3]});
  };

  Vec v{state0.eta_a, state0.eta_b, money0.m_a, money0.m_b};
  record(0.0, v);

  if (watch_depletion && (v[0] < 0.0 || v[1] < 0.0)) {
    ts.events.push_back({0.0, EventKind::Depletion, "initial stock is negative"});
    ts.halted = true;
    return ts;
  }

  // Times are rebuilt from the last restart point to avoid accumulating step sums.
  double t_anchor = 0.0;
  long long n_since_anchor = 0;
  double t = 0.0;
  const double t_eps = 1e-12 * opts.horizon;

  while (opts.horizon - t > t_eps) {
    const double t_full = t_anchor + static_cast<double>(n_since_anchor + 1) * opts.step;
    const bool last = t_full >= opts.horizon - t_eps;
    const double h = last ? opts.horizon - t : t_full - t;

    const Sides before = Sides::of(v);
    Vec next = rk4(field, v, h);
    Sides after = Sides::of(next);

    auto flipped = [&](const Sides& s) {
      return s.a_above != before.a_above || s.b_above != before.b_above ||
             (watch_depletion && (s.a_neg || s.b_neg));
    };

    if (!flipped(after)) {
      t = last ? opts.horizon : t_full;
      ++n_since_anchor;
      v = next;
      if (opts.depletion_policy == DepletionPolicy::ClampToZero) {
        const NormalizedState& prev = ts.states.back();
        if (v[0] < 0.0) {
          if (prev.eta_a > 0.0) ts.events.push_back({t, EventKind::Depletion, "eta_a clamped to 0"});
          v[0] = 0.0;
        }
        if (v[1] < 0.0) {
          if (prev.eta_b > 0.0) ts.events.push_back({t, EventKind::Depletion, "eta_b clamped to 0"});
          v[1] = 0.0;
        }
      }
      record(t, v);
      continue;
    }

    // Bisect on the sub-step length.
    double lo = 0.0;
    double hi = h;
    while (hi - lo > opts.event_tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (flipped(Sides::of(rk4(field, v, mid)))) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    next = rk4(field, v, hi);
    after = Sides::of(next);
    t += hi;
    v = next;
    record(t, v);

    if (after.a_above != before.a_above) {
      ts.events.push_back({t, EventKind::GuardCrossing,
                           std::string("eta_a crosses 1 ") + (after.a_above ? "upward" : "downward")});
    }
    if (after.b_above != before.b_above) {
      ts.events.push_back({t, EventKind::GuardCrossing,
                           std::string("eta_b crosses 1 ") + (after.b_above ? "upward" : "downward")});
    }
    if (watch_depletion && (after.a_neg || after.b_neg)) {
      ts.events.push_back({t, EventKind::Depletion,
                           std::string(after.a_neg ? "eta_a" : "eta_b") + " depleted at t=" + fmt(t)});
      ts.halted = true;
      return ts;
    }
    t_anchor = t;
    n_since_anchor = 0;
  }
  return ts;
}

}  // namespace tradeflow
