#pragma once

// JSON ingestion of scenario, ensemble and linear-system files.
//
// Scenario files come in two modes:
//
//   {"mode": "abstract", "n_bases": 2,
//    "overlaps": [["1", "1/4"], ["1/4", "1"]]}
//
// where "overlaps" is either the N x N matrix among the unbarred states or
// the full 2N x 2N matrix (state order x, X, y, Y, ...). Entries are
// rational strings ("p/q", "3") or decimals; the scenario runs exactly only
// when every entry is rational. An optional "arithmetic": "floating"
// forces floating mode.
//
//   {"mode": "quantum",
//    "bases": [[1, 0, 0, 0], {"bloch": [2.0944, 0]}, {"bisect": [0, 1]}]}
//
// Each basis is given by its outcome-0 state as (re0, im0, re1, im1), as a
// Bloch angle pair, or as the bisector of two earlier bases. The partner
// state is the orthocomplement. Quantum scenarios are always floating.

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "steering/errors.hpp"
#include "steering/linear_system.hpp"
#include "steering/ontic_model.hpp"
#include "steering/quantum.hpp"

namespace steering::tools {

struct ParsedScenario {
  Scenario scenario;
  // Set for quantum-mode files.
  std::vector<Basis> bases;
  std::vector<std::string> notices;
};

// Thrown for malformed files; the message is the diagnostic shown to users.
class ParseError : public Error {
 public:
  using Error::Error;
};

nlohmann::json load_json_file(const std::filesystem::path& path);

ParsedScenario parse_scenario(const nlohmann::json& doc);

// Canonical abstract-mode form with the full 2N x 2N matrix. Exact entries
// are written as "p/q", floating ones as shortest round-trip decimals.
nlohmann::json scenario_to_json(const Scenario& scenario);

// {"members": [{"weight": "1/2", "state": [re0, im0, re1, im1]}, ...]}
Ensemble parse_ensemble(const nlohmann::json& doc);

// {"arithmetic": "exact", "n_vars": 2,
//  "rows": [{"coefficients": ["1", "1"], "rhs": "-1"}]}
nlohmann::json system_to_json(const ExactSystem& system);
nlohmann::json system_to_json(const FloatSystem& system);
std::variant<ExactSystem, FloatSystem> parse_system(const nlohmann::json& doc);

// Numeric arrays: strings or JSON numbers. The exact form rejects decimals.
std::vector<Rational> parse_exact_vector(const nlohmann::json& doc);
std::vector<double> parse_real_vector(const nlohmann::json& doc);

std::string format_scalar(const Rational& value);
std::string format_scalar(double value);

}  // namespace steering::tools
