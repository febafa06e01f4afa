#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "steering/ontic_model.hpp"

namespace steering::tools {

struct OnticWitnessRecord {
  std::size_t first_basis = 0;
  std::size_t second_basis = 0;
  std::array<std::string, 2> first_support;
  std::array<std::string, 2> second_support;
  std::string violated_identity;

  friend bool operator==(const OnticWitnessRecord&, const OnticWitnessRecord&) = default;
};

// Machine-readable outcome of `check` and `ontic`. Numeric vectors are kept
// as strings: "p/q" in exact mode, shortest round-trip decimals otherwise.
struct SteeringReport {
  std::string command;
  nlohmann::json scenario;
  std::string arithmetic;
  // "feasible" | "infeasible" (check), "contradiction" | "consistent" (ontic).
  std::string verdict;
  std::optional<ConstraintCounts> counts;
  std::optional<std::vector<std::string>> witness;
  std::optional<std::vector<std::string>> nu;
  std::optional<bool> unique;
  std::optional<std::vector<std::string>> certificate;
  std::optional<bool> certificate_verified;
  std::optional<OnticWitnessRecord> ontic_witness;
  std::vector<std::string> notices;
  double elapsed_ms = 0.0;

  friend bool operator==(const SteeringReport&, const SteeringReport&) = default;
};

nlohmann::json to_json(const SteeringReport& report);
SteeringReport report_from_json(const nlohmann::json& doc);

}  // namespace steering::tools
