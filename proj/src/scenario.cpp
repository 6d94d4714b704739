#include "tradeflow/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tradeflow/steady.hpp"

namespace tradeflow {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out = "invalid scenario:";
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> diagnostics)
    : std::runtime_error(join_lines(diagnostics)), diagnostics_(std::move(diagnostics)) {}

TwoGoodScenario Scenario::two_good() const {
  TwoGoodScenario s;
  s.good1 = good1;
  s.good2 = good2;
  s.prices1 = prices1.value_or(PriceSet{});
  s.prices2 = prices2.value_or(PriceSet{});
  s.eta_a1 = eta_star1.value_or(2.0);
  s.eta_b2 = eta_star2.value_or(2.0);
  return s;
}

std::optional<NormalizedState> Scenario::initial_state() const {
  if (initial) return initial;
  if (kind == ModelKind::OneGood && eta_star1) return NormalizedState{*eta_star1, 1.0};
  return std::nullopt;
}

namespace {

struct Entry {
  std::string value;
  int line;
};

struct Section {
  int line{0};
  std::map<std::string, Entry> keys;
};

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"model", {"kind", "h0"}},
      {"good1", {"p_a", "p_b", "c_a", "c_b", "sigma", "eta_star"}},
      {"good2", {"p_a", "p_b", "c_a", "c_b", "sigma", "eta_star"}},
      {"prices1", {"x_a", "x_b", "y"}},
      {"prices2", {"x_a", "x_b", "y"}},
      {"initial", {"eta_a", "eta_b", "h_a", "h_b", "m_a", "m_b"}},
      {"solver", {"step", "event_tol", "horizon", "depletion_policy"}},
      {"grid", {"sigma1_min", "sigma1_max", "sigma1_steps", "eta_min", "eta_max", "eta_steps"}},
  };
  return s;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  void load(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    Section* current = nullptr;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto hash = raw.find_first_of("#;");
      const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          error(line_no, "malformed section header '" + line + "'");
          current = nullptr;
          continue;
        }
        const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
        if (!schema().contains(name)) {
          error(line_no, "unknown section [" + name + "]");
          current = nullptr;
          continue;
        }
        if (sections_.contains(name)) {
          error(line_no, "duplicate section [" + name + "] (first at line " + std::to_string(sections_[name].line) + ")");
          current = nullptr;
          continue;
        }
        current = &sections_[name];
        current->line = line_no;
        current_name_ = name;
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        error(line_no, "expected 'key = value', got '" + line + "'");
        continue;
      }
      const std::string key = trim(std::string_view(line).substr(0, eq));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      if (!current) {
        error(line_no, "key '" + key + "' outside of a known section");
        continue;
      }
      if (!schema().at(current_name_).contains(key)) {
        error(line_no, "unknown key '" + key + "' in [" + current_name_ + "]");
        continue;
      }
      if (value.empty()) {
        error(line_no, "empty value for '" + key + "'");
        continue;
      }
      if (auto it = current->keys.find(key); it != current->keys.end()) {
        error(line_no, "duplicate key '" + key + "' (first at line " + std::to_string(it->second.line) + ")");
        continue;
      }
      current->keys.emplace(key, Entry{value, line_no});
    }
  }

  bool has(const std::string& section) const { return sections_.contains(section); }
  int section_line(const std::string& section) const {
    auto it = sections_.find(section);
    return it == sections_.end() ? 0 : it->second.line;
  }

  bool has_key(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    return it != sections_.end() && it->second.keys.contains(key);
  }

  int key_line(const std::string& section, const std::string& key) const {
    return sections_.at(section).keys.at(key).line;
  }

  std::optional<std::string> text(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return std::nullopt;
    auto k = it->second.keys.find(key);
    if (k == it->second.keys.end()) return std::nullopt;
    return k->second.value;
  }

  std::optional<double> number(const std::string& section, const std::string& key) {
    auto t = text(section, key);
    if (!t) return std::nullopt;
    double v = 0.0;
    const char* first = t->data();
    const char* last = first + t->size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      error(key_line(section, key), "[" + section + "] " + key + ": not a number '" + *t + "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::size_t> count(const std::string& section, const std::string& key) {
    auto t = text(section, key);
    if (!t) return std::nullopt;
    std::size_t v = 0;
    const char* first = t->data();
    const char* last = first + t->size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      error(key_line(section, key), "[" + section + "] " + key + ": not a non-negative integer '" + *t + "'");
      return std::nullopt;
    }
    return v;
  }

  double required(const std::string& section, const std::string& key) {
    if (!has_key(section, key)) {
      error(section_line(section), "[" + section + "] missing required key '" + key + "'");
      return 0.0;
    }
    return number(section, key).value_or(0.0);
  }

  void error(int line, const std::string& msg) {
    diagnostics_.push_back(line > 0 ? origin_ + ":" + std::to_string(line) + ": " + msg : origin_ + ": " + msg);
  }

  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::string origin_;
  std::map<std::string, Section> sections_;
  std::string current_name_;
  std::vector<std::string> diagnostics_;
};

void read_good(Reader& r, const std::string& name, double h0, bool derive_fixed_point, GoodEconomy& good,
               std::optional<double>& eta_star) {
  if (!r.has(name)) {
    r.error(0, "missing [" + name + "]");
    return;
  }
  good.c_a = r.required(name, "c_a") / h0;
  good.c_b = r.required(name, "c_b") / h0;
  good.sigma = r.number(name, "sigma").value_or(0.0) / h0;
  eta_star = r.number(name, "eta_star");
  const bool has_p = r.has_key(name, "p_a") || r.has_key(name, "p_b");

  if (derive_fixed_point && eta_star) {
    if (has_p) {
      r.error(r.key_line(name, "eta_star"), "[" + name + "] give either eta_star or p_a/p_b, not both");
      return;
    }
    try {
      const auto p = fixed_point_production(*eta_star, good.c_a, good.c_b, good.sigma);
      good.p_a = p.p_a;
      good.p_b = p.p_b;
    } catch (const std::invalid_argument& e) {
      r.error(r.key_line(name, "eta_star"), "[" + name + "] " + e.what());
    }
    return;
  }
  if (derive_fixed_point) {
    good.p_a = r.required(name, "p_a") / h0;
    good.p_b = r.required(name, "p_b") / h0;
  } else {
    good.p_a = r.number(name, "p_a").value_or(0.0) / h0;
    good.p_b = r.number(name, "p_b").value_or(0.0) / h0;
  }
}

std::optional<PriceSet> read_prices(Reader& r, const std::string& name) {
  if (!r.has(name)) return std::nullopt;
  return PriceSet{r.required(name, "x_a"), r.required(name, "x_b"), r.required(name, "y")};
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
  Reader r(origin);
  r.load(text);

  Scenario s;
  if (!r.has("model")) {
    r.error(0, "missing [model]");
    throw ScenarioError(r.diagnostics());
  }

  const auto kind = r.text("model", "kind");
  if (!kind) {
    r.error(r.section_line("model"), "[model] missing required key 'kind'");
  } else if (*kind == "one-good") {
    s.kind = ModelKind::OneGood;
  } else if (*kind == "two-good") {
    s.kind = ModelKind::TwoGood;
  } else {
    r.error(r.key_line("model", "kind"), "[model] kind must be 'one-good' or 'two-good', got '" + *kind + "'");
  }

  const double h0 = r.number("model", "h0").value_or(1.0);
  if (!(h0 > 0.0)) {
    r.error(r.key_line("model", "h0"), "[model] h0 must be > 0");
    throw ScenarioError(r.diagnostics());
  }

  const bool one_good = s.kind == ModelKind::OneGood;
  read_good(r, "good1", h0, one_good, s.good1, s.eta_star1);
  for (auto& d : validate_economy(s.good1, "good1")) r.error(r.section_line("good1"), d);
  s.prices1 = read_prices(r, "prices1");

  if (one_good) {
    for (const char* extra : {"good2", "prices2", "grid"}) {
      if (r.has(extra)) r.error(r.section_line(extra), std::string("[") + extra + "] is only valid for two-good models");
    }
    if (s.prices1) {
      for (auto& d : validate_prices(*s.prices1, "prices1")) r.error(r.section_line("prices1"), d);
      if (s.prices1->advantage() == Advantage::Neither) {
        r.error(r.section_line("prices1"),
                "prices1: strict comparative advantage required (x_a < y < x_b or x_b < y < x_a)");
      }
    }
  } else {
    read_good(r, "good2", h0, false, s.good2, s.eta_star2);
    s.prices2 = read_prices(r, "prices2");
    if (!s.prices1) r.error(0, "missing [prices1]");
    if (!s.prices2) r.error(0, "missing [prices2]");
    if (s.prices1 && s.prices2) {
      for (auto& d : validate_scenario(s.two_good())) {
        if (d.starts_with("good1") || d.starts_with("good2")) continue;  // reported above / below
        const std::string sec = d.starts_with("prices1")   ? "prices1"
                                : d.starts_with("prices2") ? "prices2"
                                : d.starts_with("eta_a1")  ? "good1"
                                                           : "good2";
        r.error(r.section_line(sec), d);
      }
    }
    for (auto& d : validate_economy(s.good2, "good2")) r.error(r.section_line("good2"), d);
    if (r.has("initial")) r.error(r.section_line("initial"), "[initial] is only valid for one-good models");
  }

  if (r.has("initial")) {
    const auto ea = r.number("initial", "eta_a");
    const auto eb = r.number("initial", "eta_b");
    const auto ha = r.number("initial", "h_a");
    const auto hb = r.number("initial", "h_b");
    if ((ea && ha) || (eb && hb)) {
      r.error(r.section_line("initial"), "[initial] give eta_* or h_*, not both");
    }
    const auto a = ea ? ea : (ha ? std::optional<double>(*ha / h0) : std::nullopt);
    const auto b = eb ? eb : (hb ? std::optional<double>(*hb / h0) : std::nullopt);
    if (a.has_value() != b.has_value()) {
      r.error(r.section_line("initial"), "[initial] needs both stock levels or neither");
    } else if (a) {
      s.initial = NormalizedState{a.value_or(0.0), b.value_or(0.0)};
    }
    s.money0.m_a = r.number("initial", "m_a").value_or(0.0);
    s.money0.m_b = r.number("initial", "m_b").value_or(0.0);
  }

  if (r.has("solver")) {
    if (auto v = r.number("solver", "step")) s.solver.step = *v;
    if (auto v = r.number("solver", "event_tol")) s.solver.event_tol = *v;
    if (auto v = r.number("solver", "horizon")) s.solver.horizon = *v;
    if (auto v = r.text("solver", "depletion_policy")) {
      try {
        s.solver.depletion_policy = depletion_policy_from_string(*v);
      } catch (const std::invalid_argument& e) {
        r.error(r.key_line("solver", "depletion_policy"), e.what());
      }
    }
    try {
      s.solver.validate();
    } catch (const std::invalid_argument& e) {
      r.error(r.section_line("solver"), e.what());
    }
  }

  if (r.has("grid")) {
    GridSpec g;
    const std::string sec = "grid";
    g.sigma1_min = r.required(sec, "sigma1_min");
    g.sigma1_max = r.required(sec, "sigma1_max");
    g.eta_min = r.required(sec, "eta_min");
    g.eta_max = r.required(sec, "eta_max");
    g.sigma1_steps = r.count(sec, "sigma1_steps").value_or(g.sigma1_steps);
    g.eta_steps = r.count(sec, "eta_steps").value_or(g.eta_steps);
    try {
      g.validate();
    } catch (const std::invalid_argument& e) {
      r.error(r.section_line(sec), e.what());
    }
    s.grid = g;
  }

  if (!r.diagnostics().empty()) throw ScenarioError(r.diagnostics());
  return s;
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError({path.string() + ": cannot open file"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path.string());
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream os;
  auto kv = [&os](const char* key, double v) { os << key << " = " << format_double(v) << '\n'; };

  os << "[model]\nkind = " << (s.kind == ModelKind::OneGood ? "one-good" : "two-good") << "\n\n";

  auto good = [&](const char* name, const GoodEconomy& g, const std::optional<double>& eta_star, bool fixed_point) {
    os << '[' << name << "]\n";
    if (!(fixed_point && eta_star)) {
      kv("p_a", g.p_a);
      kv("p_b", g.p_b);
    }
    kv("c_a", g.c_a);
    kv("c_b", g.c_b);
    kv("sigma", g.sigma);
    if (eta_star) kv("eta_star", *eta_star);
    os << '\n';
  };
  auto prices = [&](const char* name, const std::optional<PriceSet>& p) {
    if (!p) return;
    os << '[' << name << "]\n";
    kv("x_a", p->x_a);
    kv("x_b", p->x_b);
    kv("y", p->y);
    os << '\n';
  };

  const bool one_good = s.kind == ModelKind::OneGood;
  good("good1", s.good1, s.eta_star1, one_good);
  prices("prices1", s.prices1);
  if (!one_good) {
    good("good2", s.good2, s.eta_star2, false);
    prices("prices2", s.prices2);
  }
  if (one_good && (s.initial || s.money0 != MoneyState{})) {
    os << "[initial]\n";
    if (s.initial) {
      kv("eta_a", s.initial->eta_a);
      kv("eta_b", s.initial->eta_b);
    }
    kv("m_a", s.money0.m_a);
    kv("m_b", s.money0.m_b);
    os << '\n';
  }
  os << "[solver]\n";
  kv("step", s.solver.step);
  kv("event_tol", s.solver.event_tol);
  kv("horizon", s.solver.horizon);
  os << "depletion_policy = " << to_string(s.solver.depletion_policy) << "\n";
  if (s.grid) {
    os << "\n[grid]\n";
    kv("sigma1_min", s.grid->sigma1_min);
    kv("sigma1_max", s.grid->sigma1_max);
    os << "sigma1_steps = " << s.grid->sigma1_steps << '\n';
    kv("eta_min", s.grid->eta_min);
    kv("eta_max", s.grid->eta_max);
    os << "eta_steps = " << s.grid->eta_steps << '\n';
  }
  return os.str();
}

}  // namespace tradeflow
