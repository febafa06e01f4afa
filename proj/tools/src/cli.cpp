#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "steering/errors.hpp"
#include "steering_tools/commands.hpp"

namespace steering::tools {
namespace {

void print_notices(const SteeringReport& report, std::ostream& err) {
  for (const auto& notice : report.notices) err << "notice: " << notice << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local hidden-variable models for qubit steering scenarios"};
  app.require_subcommand(1);

  std::string path;
  auto* check = app.add_subcommand("check", "Decide whether a local noncontextual model exists");
  check->add_option("file", path, "Scenario file (JSON)")->required();
  auto* ontic = app.add_subcommand("ontic", "Test the point-mass (psi-ontic) model");
  ontic->add_option("file", path, "Scenario file (JSON)")->required();
  auto* povm = app.add_subcommand("povm", "Construct the steering measurement for an ensemble");
  povm->add_option("file", path, "Ensemble file (JSON)")->required();
  auto* verify = app.add_subcommand("verify-cert", "Re-check a Farkas infeasibility certificate");
  verify->add_option("file", path, "Certificate file or check report (JSON)")->required();

  SweepOptions sweep_options;
  std::string beta_mode = "quantum";
  std::string beta_grid;
  auto* sweep = app.add_subcommand("sweep", "Sweep alpha and write CSV verdicts");
  sweep->add_option("--alpha", sweep_options.alpha_grid, "Alpha grid start:stop:step")
      ->required();
  sweep->add_option("--bases", sweep_options.n_bases, "Number of bases (2 or 3)")
      ->check(CLI::IsMember({2, 3}));
  sweep->add_option("--beta-mode", beta_mode, "quantum | grid | threshold-search")
      ->check(CLI::IsMember({"quantum", "grid", "threshold-search"}));
  sweep->add_option("--beta", beta_grid, "Beta grid start:stop:step for --beta-mode grid");
  sweep->add_option("--jobs", sweep_options.jobs, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (check->parsed()) {
      const SteeringReport report = cmd_check(path);
      print_notices(report, err);
      out << to_json(report).dump(2) << '\n';
    } else if (ontic->parsed()) {
      const SteeringReport report = cmd_ontic(path);
      print_notices(report, err);
      out << to_json(report).dump(2) << '\n';
    } else if (povm->parsed()) {
      out << cmd_povm(path).dump(2) << '\n';
    } else if (verify->parsed()) {
      out << cmd_verify_cert(path).dump(2) << '\n';
    } else if (sweep->parsed()) {
      static const std::map<std::string, BetaMode> kModes{
          {"quantum", BetaMode::quantum},
          {"grid", BetaMode::grid},
          {"threshold-search", BetaMode::threshold_search}};
      sweep_options.beta_mode = kModes.at(beta_mode);
      if (!beta_grid.empty()) sweep_options.beta_grid = beta_grid;
      write_csv(out, cmd_sweep(sweep_options));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace steering::tools
