#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tradeflow/commands.hpp"
#include "tradeflow/scenario.hpp"

namespace {

std::optional<tradeflow::Scenario> load(const std::string& path) {
  try {
    return tradeflow::parse_scenario(path);
  } catch (const tradeflow::ScenarioError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << d << '\n';
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tradeflow: two-country threshold-exchange trade model"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out;
  bool plot = false;

  auto* simulate = app.add_subcommand("simulate", "Integrate a one-good scenario (closed form and/or RK4)");
  simulate->add_option("scenario", scenario_path, "Scenario file")->required();
  auto* analytic = simulate->add_flag("--analytic", "Closed-form piecewise solution only");
  auto* numeric = simulate->add_flag("--numeric", "Fixed-step RK4 with event detection only");
  auto* both = simulate->add_flag("--both", "Run both and compare (default)");
  analytic->excludes(numeric)->excludes(both);
  numeric->excludes(both);
  simulate->add_option("--out", out, "Output CSV (stdout when omitted)");
  simulate->add_flag("--plot", plot, "Write a gnuplot script next to the data");

  std::optional<double> eta_star;
  auto* fixed = app.add_subcommand("fixed-point", "Fixed-point productions and money rates of one good");
  fixed->add_option("scenario", scenario_path, "Scenario file")->required();
  fixed->add_option("--eta-star", eta_star, "Fixed-point stock of the exporter (> 1)");

  auto* region = app.add_subcommand("region", "Scan the (sigma1, eta_a1) feasibility region of a two-good scenario");
  region->add_option("scenario", scenario_path, "Scenario file")->required();
  region->add_option("--out", out, "Output CSV (stdout when omitted)");
  region->add_flag("--plot", plot, "Write a gnuplot script next to the data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tradeflow::exit_code::kInput;
  }

  const auto scenario = load(scenario_path);
  if (!scenario) return tradeflow::exit_code::kInput;

  if (simulate->parsed()) {
    tradeflow::SimulateOptions opts;
    opts.mode = analytic->count() ? tradeflow::SimulateMode::Analytic
                : numeric->count() ? tradeflow::SimulateMode::Numeric
                                   : tradeflow::SimulateMode::Both;
    opts.out = out;
    opts.plot = plot;
    return tradeflow::cmd_simulate(*scenario, opts, std::cout, std::cerr);
  }
  if (fixed->parsed()) {
    return tradeflow::cmd_fixed_point(*scenario, eta_star, std::cout, std::cerr);
  }
  tradeflow::RegionOptions opts;
  opts.out = out;
  opts.plot = plot;
  return tradeflow::cmd_region(*scenario, opts, std::cout, std::cerr);
}
