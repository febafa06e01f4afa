#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "steering/errors.hpp"
#include "steering/feasibility.hpp"
#include "steering_tools/commands.hpp"
#include "steering_tools/report.hpp"
#include "steering_tools/scenario_io.hpp"

namespace steering::tools {
namespace {

using nlohmann::json;

const std::filesystem::path kScenarios = STEERING_SCENARIO_DIR;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "steering");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const json& doc) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << doc.dump();
  return path;
}

// Two-basis abstract scenario with the given unbarred overlap literal.
json abstract_two(const std::string& alpha) {
  return {{"mode", "abstract"},
          {"n_bases", 2},
          {"overlaps", json::array({json::array({"1", alpha}), json::array({alpha, "1"})})}};
}

SteeringReport without_timing(SteeringReport r) {
  r.elapsed_ms = 0.0;
  return r;
}

TEST(ScenarioParsing, AbstractRationalEntriesAreExact) {
  const auto parsed = parse_scenario(abstract_two("1/4"));
  EXPECT_EQ(parsed.scenario.mode(), ArithmeticMode::exact);
  EXPECT_EQ(parsed.scenario.overlap({0, 0}, {1, 1}).exact(), Rational(3, 4));
  EXPECT_TRUE(parsed.notices.empty());
}

TEST(ScenarioParsing, DecimalEntriesSwitchToFloating) {
  const auto parsed = parse_scenario(abstract_two("0.3"));
  EXPECT_EQ(parsed.scenario.mode(), ArithmeticMode::floating);
  EXPECT_FALSE(parsed.notices.empty());
}

TEST(ScenarioParsing, FullMatrixForm) {
  const json full{{"mode", "abstract"},
                  {"n_bases", 2},
                  {"overlaps",
                   {{"1", "0", "1/4", "3/4"},
                    {"0", "1", "3/4", "1/4"},
                    {"1/4", "3/4", "1", "0"},
                    {"3/4", "1/4", "0", "1"}}}};
  const auto parsed = parse_scenario(full);
  const auto shorthand = parse_scenario(abstract_two("1/4"));
  EXPECT_EQ(parsed.scenario, shorthand.scenario);
}

TEST(ScenarioParsing, QuantumModeIsAlwaysFloating) {
  const auto parsed = parse_scenario(load_json_file(kScenarios / "three_basis_quantum.json"));
  EXPECT_EQ(parsed.scenario.mode(), ArithmeticMode::floating);
  EXPECT_EQ(parsed.bases.size(), 3U);
  EXPECT_NEAR(parsed.scenario.overlap({0, 0}, {1, 0}).approx(), 0.25, 1e-10);
  EXPECT_NEAR(parsed.scenario.overlap({0, 0}, {2, 0}).approx(), 0.75, 1e-10);
  EXPECT_FALSE(parsed.notices.empty());
}

TEST(ScenarioParsing, QuantumKetsAreRenormalizedWithNotice) {
  const auto parsed =
      parse_scenario(json{{"mode", "quantum"}, {"bases", {{2, 0, 0, 0}, {1, 0, 1, 0}}}});
  EXPECT_NEAR(parsed.scenario.overlap({0, 0}, {1, 0}).approx(), 0.5, 1e-12);
  EXPECT_GE(parsed.notices.size(), 3U);
}

TEST(ScenarioParsing, RejectsMalformedInput) {
  EXPECT_THROW(parse_scenario(json{{"mode", "other"}}), ParseError);
  EXPECT_THROW(parse_scenario(json{{"mode", "abstract"}, {"n_bases", 2}}), ParseError);
  EXPECT_THROW(parse_scenario(json::parse(
                   R"({"mode": "abstract", "n_bases": 2, "overlaps": [["1", "1/4"], ["1/4"]]})")),
               ParseError);
  EXPECT_THROW(parse_scenario(abstract_two("x")), ParseError);
  EXPECT_THROW(parse_scenario(json::parse(
                   R"({"mode": "abstract", "n_bases": 2, "overlaps": [["1", "1/4"], ["1/3", "1"]]})")),
               InvariantViolation);
  EXPECT_THROW(parse_scenario(json::parse(
                   R"({"mode": "abstract", "n_bases": 2, "overlaps": [["1", "1/4"], ["1/4", "1/2"]]})")),
               InvariantViolation);
  EXPECT_THROW(parse_scenario(json{{"mode", "quantum"}, {"bases", {{1, 0}}}}), ParseError);
  EXPECT_THROW(load_json_file(kScenarios / "missing.json"), ParseError);
}

TEST(ScenarioParsing, SerializationRoundTrips) {
  for (const char* name : {"two_basis_alpha_quarter.json", "three_basis_alpha_quarter.json",
                           "three_basis_quantum.json", "single_basis.json"}) {
    const auto parsed = parse_scenario(load_json_file(kScenarios / name));
    const auto again = parse_scenario(scenario_to_json(parsed.scenario));
    EXPECT_EQ(again.scenario, parsed.scenario) << name;
  }
}

TEST(SystemParsing, RoundTripsBothArithmetics) {
  ExactSystem exact(2);
  exact.add_row({Rational(1, 3), Rational(-2)}, Rational(5, 7));
  const auto parsed = parse_system(system_to_json(exact));
  ASSERT_TRUE(std::holds_alternative<ExactSystem>(parsed));
  EXPECT_EQ(std::get<ExactSystem>(parsed), exact);

  FloatSystem floating(2);
  floating.add_row({0.1, -2.5}, 1.0 / 3.0);
  const auto parsed_f = parse_system(system_to_json(floating));
  ASSERT_TRUE(std::holds_alternative<FloatSystem>(parsed_f));
  EXPECT_EQ(std::get<FloatSystem>(parsed_f), floating);
}

TEST(CheckCommand, TwoBasisQuarter) {
  const auto report = cmd_check(kScenarios / "two_basis_alpha_quarter.json");
  EXPECT_EQ(report.verdict, "feasible");
  EXPECT_EQ(report.unique, true);
  EXPECT_EQ(report.nu, (std::vector<std::string>{"1/8", "3/8", "3/8", "1/8"}));
  ASSERT_TRUE(report.counts.has_value());
  EXPECT_EQ(report.counts->rows(), 28U);
  EXPECT_EQ(report.counts->variables, 20U);
  EXPECT_FALSE(report.certificate.has_value());
}

TEST(CheckCommand, ThreeBasisQuarterIsInfeasibleWithVerifiedCertificate) {
  const auto report = cmd_check(kScenarios / "three_basis_alpha_quarter.json");
  EXPECT_EQ(report.verdict, "infeasible");
  EXPECT_EQ(report.certificate_verified, true);
  ASSERT_TRUE(report.certificate.has_value());
  EXPECT_EQ(report.certificate->size(), 78U);
  EXPECT_FALSE(report.witness.has_value());
}

TEST(CheckCommand, QuantumScenarioIsInfeasible) {
  const auto report = cmd_check(kScenarios / "three_basis_quantum.json");
  EXPECT_EQ(report.arithmetic, "floating");
  EXPECT_EQ(report.verdict, "infeasible");
  EXPECT_EQ(report.certificate_verified, true);
}

TEST(OnticCommand, DocumentedExamples) {
  const auto two = cmd_ontic(kScenarios / "two_basis_alpha_quarter.json");
  EXPECT_EQ(two.verdict, "contradiction");
  ASSERT_TRUE(two.ontic_witness.has_value());
  EXPECT_EQ(two.ontic_witness->first_support[0], "lambda_x");
  EXPECT_EQ(cmd_ontic(kScenarios / "single_basis.json").verdict, "consistent");
  EXPECT_EQ(cmd_ontic(kScenarios / "three_basis_quantum.json").verdict, "contradiction");
}

TEST(Reports, SerializationRoundTripsForAllCommands) {
  for (const char* name : {"two_basis_alpha_quarter.json", "three_basis_alpha_quarter.json",
                           "three_basis_quantum.json", "single_basis.json"}) {
    for (const auto& report : {cmd_check(kScenarios / name), cmd_ontic(kScenarios / name)}) {
      EXPECT_EQ(report_from_json(to_json(report)), report) << name << " " << report.command;
      EXPECT_EQ(report_from_json(json::parse(to_json(report).dump())), report) << name;
    }
  }
}

TEST(Reports, CheckIsDeterministicApartFromTiming) {
  const auto a = cmd_check(kScenarios / "three_basis_alpha_quarter.json");
  const auto b = cmd_check(kScenarios / "three_basis_alpha_quarter.json");
  EXPECT_EQ(without_timing(a), without_timing(b));
  auto ja = to_json(a);
  auto jb = to_json(b);
  ja.erase("elapsed_ms");
  jb.erase("elapsed_ms");
  EXPECT_EQ(ja.dump(), jb.dump());
}

TEST(PovmCommand, ComputationalEnsemble) {
  const auto report = cmd_povm(kScenarios / "ensemble_computational.json");
  EXPECT_EQ(report.at("probabilities"), (json{0.5, 0.5}));
  EXPECT_LE(report.at("identity_error").get<double>(), 1e-10);
}

TEST(PovmCommand, AlphaQuarterBasisHasUnitFidelities) {
  const auto report = cmd_povm(kScenarios / "ensemble_alpha_quarter.json");
  ASSERT_EQ(report.at("elements").size(), 2U);
  for (const auto& f : report.at("fidelities")) EXPECT_NEAR(f.get<double>(), 1.0, 1e-10);
  EXPECT_LE(report.at("max_state_error").get<double>(), 1e-10);
  EXPECT_LE(report.at("max_probability_error").get<double>(), 1e-10);
}

TEST(PovmCommand, PureEnsembleIsRejected) {
  EXPECT_THROW(cmd_povm(kScenarios / "ensemble_pure.json"), SteeringConditionViolated);
  const auto result = run({"povm", (kScenarios / "ensemble_pure.json").string()});
  EXPECT_NE(result.code, 0);
  EXPECT_NE(result.err.find("if and only if"), std::string::npos);
}

TEST(VerifyCert, AcceptsCheckReports) {
  const auto report = cmd_check(kScenarios / "three_basis_alpha_quarter.json");
  const auto verdict = verify_cert_report(to_json(report));
  EXPECT_EQ(verdict.at("valid"), true);
  EXPECT_EQ(verdict.at("rows"), 78);
}

TEST(VerifyCert, InlineSystems) {
  const json good{{"certificate", {"-1"}},
                  {"system",
                   {{"arithmetic", "exact"},
                    {"n_vars", 2},
                    {"rows", {{{"coefficients", {"1", "1"}}, {"rhs", "-1"}}}}}}};
  EXPECT_EQ(verify_cert_report(good).at("valid"), true);
  json bad = good;
  bad["certificate"] = {"1"};
  EXPECT_EQ(verify_cert_report(bad).at("valid"), false);
  json wrong_length = good;
  wrong_length["certificate"] = {"1", "2"};
  EXPECT_THROW(verify_cert_report(wrong_length), DimensionMismatch);
  EXPECT_THROW(verify_cert_report(json{{"certificate", {"1"}}}), ParseError);
}

TEST(VerifyCert, TamperedCertificateFails) {
  auto doc = to_json(cmd_check(kScenarios / "three_basis_alpha_quarter.json"));
  auto& cert = doc.at("certificate");
  for (auto& entry : cert) entry = "0";
  EXPECT_EQ(verify_cert_report(doc).at("valid"), false);
}

TEST(Grid, ParsesExactPoints) {
  const auto grid = parse_grid("0.1:0.9:0.1");
  ASSERT_EQ(grid.size(), 9U);
  EXPECT_EQ(grid.front(), Rational(1, 10));
  EXPECT_EQ(grid.back(), Rational(9, 10));
  EXPECT_EQ(parse_grid("1/4:1/2:1/8").size(), 3U);
}

TEST(Grid, RejectsBadSpecs) {
  EXPECT_THROW(parse_grid("0.1:0.9"), ParseError);
  EXPECT_THROW(parse_grid("0:0.5:0.1"), ParseError);
  EXPECT_THROW(parse_grid("0.1:1:0.1"), ParseError);
  EXPECT_THROW(parse_grid("0.5:0.1:0.1"), ParseError);
  EXPECT_THROW(parse_grid("0.1:0.5:0"), ParseError);
  EXPECT_THROW(parse_grid("0.1:0.5:-0.1"), ParseError);
  EXPECT_THROW(parse_grid("a:b:c"), ParseError);
}

TEST(Sweep, TwoBasisAllFeasible) {
  const auto rows = cmd_sweep({"0.1:0.9:0.1", 2, BetaMode::quantum, std::nullopt, 0});
  ASSERT_EQ(rows.size(), 9U);
  for (const auto& row : rows) {
    EXPECT_EQ(row.verdict, "feasible");
    EXPECT_EQ(row.beta, "NA");
    EXPECT_EQ(row.n_bases, 2);
  }
  EXPECT_EQ(rows.front().alpha, "0.1");
}

TEST(Sweep, QuantumThreeBasisAllInfeasible) {
  const auto rows = cmd_sweep({"0.1:0.9:0.1", 3, BetaMode::quantum, std::nullopt, 3});
  ASSERT_EQ(rows.size(), 9U);
  for (const auto& row : rows) {
    EXPECT_EQ(row.verdict, "infeasible") << row.alpha;
    const double alpha = std::stod(row.alpha);
    EXPECT_NEAR(std::stod(row.beta), 0.5 * (1 + std::sqrt(alpha)), 1e-10);
  }
}

TEST(Sweep, GridModeRowCountAndOrder) {
  const auto rows = cmd_sweep({"0.25:0.5:0.25", 3, BetaMode::grid, "0.5:0.9:0.1", 2});
  ASSERT_EQ(rows.size(), 10U);
  EXPECT_EQ(rows[0].alpha, "0.25");
  EXPECT_EQ(rows[0].beta, "0.5");
  EXPECT_EQ(rows[0].verdict, "feasible");
  EXPECT_EQ(rows[2].beta, "0.7");
  EXPECT_EQ(rows[2].verdict, "infeasible");  // above (1 + 1/4)/2
  EXPECT_EQ(rows[5].alpha, "0.5");
  EXPECT_EQ(rows[7].verdict, "feasible");    // 0.7 <= 0.75
  EXPECT_EQ(rows[8].verdict, "infeasible");  // 0.8 > 0.75
  for (const auto& row : rows) EXPECT_FALSE(row.verdict.empty());
  EXPECT_THROW(cmd_sweep({"0.25:0.5:0.25", 3, BetaMode::grid, std::nullopt, 1}), ParseError);
}

TEST(Sweep, OrderIndependentOfJobCount) {
  const SweepOptions serial{"0.05:0.85:0.05", 3, BetaMode::quantum, std::nullopt, 1};
  SweepOptions parallel = serial;
  parallel.jobs = 8;
  EXPECT_EQ(cmd_sweep(serial), cmd_sweep(parallel));
}

TEST(Threshold, MatchesAnalyticBoundary) {
  for (const Rational& alpha : {Rational(1, 4), Rational(1, 2)}) {
    const auto t = threshold_search(alpha);
    const double expected = to_double(Rational((1 + alpha) / 2));
    EXPECT_NEAR(t.estimate, expected, 1e-6);
    EXPECT_LE(t.feasible_beta, (1 + alpha) / 2);
    EXPECT_GT(t.infeasible_beta, (1 + alpha) / 2);
  }
}

TEST(Csv, HeaderAndRows) {
  std::ostringstream out;
  write_csv(out, {{"0.1", "NA", 2, "feasible"}, {"0.2", "0.7", 3, "infeasible"}});
  EXPECT_EQ(out.str(), "alpha,beta,n_bases,verdict\n0.1,NA,2,feasible\n0.2,0.7,3,infeasible\n");
}

TEST(RunCli, ExitCodes) {
  const auto feasible = run({"check", (kScenarios / "two_basis_alpha_quarter.json").string()});
  EXPECT_EQ(feasible.code, 0);
  EXPECT_EQ(json::parse(feasible.out).at("verdict"), "feasible");

  const auto infeasible = run({"check", (kScenarios / "three_basis_alpha_quarter.json").string()});
  EXPECT_EQ(infeasible.code, 0) << "infeasible is a successful answer";

  const auto quantum = run({"check", (kScenarios / "three_basis_quantum.json").string()});
  EXPECT_EQ(quantum.code, 0);
  EXPECT_NE(quantum.err.find("notice"), std::string::npos);

  EXPECT_NE(run({"check", (kScenarios / "missing.json").string()}).code, 0);
  EXPECT_NE(run({}).code, 0);
  EXPECT_NE(run({"sweep"}).code, 0);
  EXPECT_NE(run({"sweep", "--alpha", "0:1:0.1"}).code, 0);
  EXPECT_NE(run({"sweep", "--alpha", "0.1:0.2:0.1", "--bases", "4"}).code, 0);
}

TEST(RunCli, SweepWritesCsv) {
  const auto result = run({"sweep", "--alpha", "0.1:0.3:0.1", "--bases", "3"});
  EXPECT_EQ(result.code, 0);
  std::istringstream lines(result.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "alpha,beta,n_bases,verdict");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_NE(line.find(",3,infeasible"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 3);
}

TEST(RunCli, VerifyCertOnSavedReport) {
  const auto report = run({"check", (kScenarios / "three_basis_alpha_quarter.json").string()});
  const auto path = write_temp("steering_cli_report.json", json::parse(report.out));
  const auto verdict = run({"verify-cert", path.string()});
  EXPECT_EQ(verdict.code, 0);
  EXPECT_EQ(json::parse(verdict.out).at("valid"), true);
  std::filesystem::remove(path);
}

TEST(RunCli, MalformedJsonIsAnError) {
  const auto path = std::filesystem::temp_directory_path() / "steering_cli_bad.json";
  std::ofstream(path) << "{ not json";
  const auto result = run({"check", path.string()});
  EXPECT_NE(result.code, 0);
  EXPECT_NE(result.err.find("error:"), std::string::npos);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace steering::tools
