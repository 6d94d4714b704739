#include "tradeflow/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tradeflow {

namespace {

std::string fmt_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

NormalizedState::NormalizedState(double a, double b) : eta_a(a), eta_b(b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("NormalizedState: stock levels must be finite");
  }
}

void GoodEconomy::validate() const {
  auto issues = validate_economy(*this, "economy");
  if (!issues.empty()) {
    throw std::invalid_argument(issues.front());
  }
}

GoodEconomy GoodEconomy::from_raw(double p_a, double p_b, double c_a, double c_b, double sigma, double h0) {
  if (!(h0 > 0.0) || !std::isfinite(h0)) {
    throw std::invalid_argument("threshold height h0 must be positive and finite");
  }
  GoodEconomy e{p_a / h0, p_b / h0, c_a / h0, c_b / h0, sigma / h0};
  e.validate();
  return e;
}

NormalizedState normalize_heights(double h_a, double h_b, double h0) {
  if (!(h0 > 0.0) || !std::isfinite(h0)) {
    throw std::invalid_argument("threshold height h0 must be positive and finite");
  }
  return {h_a / h0, h_b / h0};
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::NoExchange: return "NoExchange";
    case Regime::AExports: return "AExports";
    case Regime::BExports: return "BExports";
    case Regime::Bilateral: return "Bilateral";
  }
  return "?";
}

Regime regime_from_string(std::string_view s) {
  for (auto r : {Regime::NoExchange, Regime::AExports, Regime::BExports, Regime::Bilateral}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown regime: " + std::string(s));
}

Advantage PriceSet::advantage() const {
  if (x_a < y && y < x_b) return Advantage::A;
  if (x_b < y && y < x_a) return Advantage::B;
  return Advantage::Neither;
}

std::vector<std::string> validate_economy(const GoodEconomy& e, std::string_view label) {
  std::vector<std::string> out;
  auto check = [&](double v, const char* name) {
    if (!std::isfinite(v)) {
      out.push_back(std::string(label) + "." + name + " must be finite");
    } else if (v < 0.0) {
      out.push_back(std::string(label) + "." + name + " must be >= 0 (got " + fmt_value(v) + ")");
    }
  };
  check(e.p_a, "p_a");
  check(e.p_b, "p_b");
  check(e.c_a, "c_a");
  check(e.c_b, "c_b");
  check(e.sigma, "sigma");
  return out;
}

std::vector<std::string> validate_prices(const PriceSet& p, std::string_view label) {
  std::vector<std::string> out;
  auto check = [&](double v, const char* name) {
    if (!std::isfinite(v)) {
      out.push_back(std::string(label) + "." + name + " must be finite");
    } else if (v < 0.0) {
      out.push_back(std::string(label) + "." + name + " must be >= 0 (got " + fmt_value(v) + ")");
    }
  };
  check(p.x_a, "x_a");
  check(p.x_b, "x_b");
  check(p.y, "y");
  return out;
}

std::vector<std::string> validate_scenario(const TwoGoodScenario& s) {
  std::vector<std::string> out;
  auto append = [&out](std::vector<std::string> v) { out.insert(out.end(), v.begin(), v.end()); };
  append(validate_economy(s.good1, "good1"));
  append(validate_economy(s.good2, "good2"));
  append(validate_prices(s.prices1, "prices1"));
  append(validate_prices(s.prices2, "prices2"));

  const auto& p1 = s.prices1;
  if (!(p1.x_a < p1.y)) {
    out.push_back("prices1: strict inequality x_a < y fails (x_a=" + fmt_value(p1.x_a) + ", y=" + fmt_value(p1.y) + ")");
  }
  if (!(p1.y < p1.x_b)) {
    out.push_back("prices1: strict inequality y < x_b fails (y=" + fmt_value(p1.y) + ", x_b=" + fmt_value(p1.x_b) + ")");
  }
  const auto& p2 = s.prices2;
  if (!(p2.x_a > p2.y)) {
    out.push_back("prices2: strict inequality x_a > y fails (x_a=" + fmt_value(p2.x_a) + ", y=" + fmt_value(p2.y) + ")");
  }
  if (!(p2.y > p2.x_b)) {
    out.push_back("prices2: strict inequality y > x_b fails (y=" + fmt_value(p2.y) + ", x_b=" + fmt_value(p2.x_b) + ")");
  }
  if (!(s.eta_a1 > 1.0) || !std::isfinite(s.eta_a1)) {
    out.push_back("eta_a1 > 1 required (got " + fmt_value(s.eta_a1) + ")");
  }
  if (!(s.eta_b2 > 1.0) || !std::isfinite(s.eta_b2)) {
    out.push_back("eta_b2 > 1 required (got " + fmt_value(s.eta_b2) + ")");
  }
  return out;
}

}  // namespace tradeflow
