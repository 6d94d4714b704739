#include "tradeflow/steady.hpp"

#include <cmath>
#include <sstream>

#include "tradeflow/exchange.hpp"

namespace tradeflow {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

FixedPointProduction fixed_point_production(double eta_a_star, double c_a, double c_b, double sigma) {
  if (!(eta_a_star >= 1.0) || !std::isfinite(eta_a_star)) {
    throw std::invalid_argument("fixed point requires eta_a* >= 1 (got " + fmt(eta_a_star) + ")");
  }
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  if (!(c_a >= 0.0) || !(c_b >= 0.0)) throw std::invalid_argument("consumptions must be >= 0");
  // Same expression as the exchange term in rhs(), so the fixed point is exact.
  const double export_rate = sigma * excess(eta_a_star);
  const FixedPointProduction out{c_a + export_rate, c_b - export_rate};
  if (out.p_b < 0.0) {
    throw InfeasibleProduction("implied P_B = " + fmt(out.p_b) + " < 0: need sigma*(eta_a*-1) = " +
                               fmt(export_rate) + " <= C_B = " + fmt(c_b));
  }
  return out;
}

GoodEconomy fixed_point_economy(double eta_a_star, double c_a, double c_b, double sigma) {
  const auto p = fixed_point_production(eta_a_star, c_a, c_b, sigma);
  return {p.p_a, p.p_b, c_a, c_b, sigma};
}

bool is_steady_state(const NormalizedState& state, const GoodEconomy& econ, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  const Rates r = rhs(state, econ);
  return std::abs(r.deta_a) <= tol && std::abs(r.deta_b) <= tol;
}

std::vector<RegimeEquilibrium> regime_equilibria(const GoodEconomy& econ, double tol) {
  econ.validate();
  const double net_a = econ.net_a();
  const double net_b = econ.net_b();
  const double net_sum = net_a + net_b;
  const bool balanced_total = std::abs(net_sum) <= tol;

  std::vector<RegimeEquilibrium> out;

  {
    RegimeEquilibrium eq{Regime::NoExchange, std::abs(net_a) <= tol && std::abs(net_b) <= tol, std::nullopt, 0.0, {}};
    eq.description = eq.stationary ? "every state with eta_a <= 1 and eta_b <= 1 is stationary"
                                   : "linear drift at rates (" + fmt(net_a) + ", " + fmt(net_b) + ")";
    out.push_back(eq);
  }
  if (!(econ.sigma > 0.0)) return out;

  auto one_way = [&](Regime r, double net_exp, const char* exporter, const char* importer) {
    const double target = (net_exp + econ.sigma) / econ.sigma;
    RegimeEquilibrium eq{r, false, target, econ.sigma, {}};
    if (!(target > 1.0)) {
      eq.description = std::string(exporter) + " relaxes to " + fmt(target) + ", outside the region (<= 1)";
    } else if (!balanced_total) {
      eq.description = std::string(exporter) + " relaxes to " + fmt(target) + "; " + importer +
                       " drifts at rate " + fmt(net_sum) + " (needs net_a + net_b = 0)";
    } else {
      eq.stationary = true;
      eq.description = std::string(exporter) + " = " + fmt(target) + ", any " + importer + " <= 1";
    }
    out.push_back(eq);
  };
  one_way(Regime::AExports, net_a, "eta_a", "eta_b");
  one_way(Regime::BExports, net_b, "eta_b", "eta_a");

  {
    const double d_star = (net_a - net_b) / (2.0 * econ.sigma);
    RegimeEquilibrium eq{Regime::Bilateral, balanced_total, d_star, 2.0 * econ.sigma, {}};
    eq.description = balanced_total ? "every state with eta_a - eta_b = " + fmt(d_star) + ", both > 1"
                                    : "total stock grows at rate " + fmt(net_sum) + "; difference relaxes to " +
                                          fmt(d_star);
    out.push_back(eq);
  }
  return out;
}

}  // namespace tradeflow
