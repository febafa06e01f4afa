#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "steering/quantum.hpp"
#include "steering/rational.hpp"
#include "steering_tools/report.hpp"
#include "steering_tools/scenario_io.hpp"

namespace steering::tools {

// Builds the cell model, decides feasibility and (when feasible) uniqueness.
SteeringReport cmd_check(const ParsedScenario& parsed);
SteeringReport cmd_check(const std::filesystem::path& path);

// Point-mass (psi-ontic) consistency of the scenario.
SteeringReport cmd_ontic(const ParsedScenario& parsed);
SteeringReport cmd_ontic(const std::filesystem::path& path);

// Steering measurement for an ensemble, with probabilities and fidelities of
// the conditional states. Throws SteeringConditionViolated when the
// ensemble does not average to I/2.
nlohmann::json povm_report(const Ensemble& ensemble);
nlohmann::json cmd_povm(const std::filesystem::path& path);

// Re-checks a Farkas certificate against a system given inline ("system")
// or rebuilt from a scenario ("scenario"). A `check` report is accepted.
nlohmann::json verify_cert_report(const nlohmann::json& doc);
nlohmann::json cmd_verify_cert(const std::filesystem::path& path);

enum class BetaMode { quantum, grid, threshold_search };

struct SweepOptions {
  std::string alpha_grid;  // "start:stop:step"
  int n_bases = 3;
  BetaMode beta_mode = BetaMode::quantum;
  std::optional<std::string> beta_grid;  // required for BetaMode::grid
  unsigned jobs = 0;                     // 0 = hardware concurrency
};

struct SweepRow {
  std::string alpha;
  std::string beta;
  int n_bases;
  std::string verdict;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// Points start, start + step, ... not exceeding stop, computed exactly from
// decimal or "p/q" bounds. Every point must lie strictly inside (0, 1).
std::vector<Rational> parse_grid(const std::string& grid);

struct ThresholdResult {
  // Largest bracketing beta known feasible and smallest known infeasible.
  Rational feasible_beta;
  Rational infeasible_beta;
  double estimate;
};

// Bisects beta in [1/2, 1) for the three-basis bisecting model at fixed
// alpha, in exact arithmetic, until the bracket is narrower than `width`.
ThresholdResult threshold_search(const Rational& alpha, double width = 1e-7);

std::vector<SweepRow> cmd_sweep(const SweepOptions& options);
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// Entry point of the `steering` tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace steering::tools
