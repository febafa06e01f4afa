#include "steering_tools/report.hpp"

#include "steering_tools/scenario_io.hpp"

namespace steering::tools {
namespace {

using nlohmann::json;

template <typename T>
void put(json& doc, const char* key, const std::optional<T>& value) {
  if (value) doc[key] = *value;
}

template <typename T>
std::optional<T> take(const json& doc, const char* key) {
  if (!doc.contains(key)) return std::nullopt;
  return doc.at(key).get<T>();
}

}  // namespace

json to_json(const SteeringReport& report) {
  json doc{{"command", report.command},
           {"scenario", report.scenario},
           {"arithmetic", report.arithmetic},
           {"verdict", report.verdict}};
  if (report.counts) {
    const auto& c = *report.counts;
    doc["counts"] = {{"variables", c.variables},     {"rows", c.rows()},
                     {"support", c.support},         {"normalization", c.normalization},
                     {"born", c.born},               {"mixture", c.mixture}};
  }
  put(doc, "witness", report.witness);
  put(doc, "nu", report.nu);
  put(doc, "unique", report.unique);
  put(doc, "certificate", report.certificate);
  put(doc, "certificate_verified", report.certificate_verified);
  if (report.ontic_witness) {
    const auto& w = *report.ontic_witness;
    doc["ontic_witness"] = {{"first_basis", w.first_basis},
                            {"second_basis", w.second_basis},
                            {"first_support", w.first_support},
                            {"second_support", w.second_support},
                            {"violated_identity", w.violated_identity}};
  }
  doc["notices"] = report.notices;
  doc["elapsed_ms"] = report.elapsed_ms;
  return doc;
}

SteeringReport report_from_json(const json& doc) {
  try {
    SteeringReport report;
    report.command = doc.at("command").get<std::string>();
    report.scenario = doc.at("scenario");
    report.arithmetic = doc.at("arithmetic").get<std::string>();
    report.verdict = doc.at("verdict").get<std::string>();
    if (doc.contains("counts")) {
      const json& c = doc.at("counts");
      ConstraintCounts counts;
      counts.variables = c.at("variables").get<std::size_t>();
      counts.support = c.at("support").get<std::size_t>();
      counts.normalization = c.at("normalization").get<std::size_t>();
      counts.born = c.at("born").get<std::size_t>();
      counts.mixture = c.at("mixture").get<std::size_t>();
      if (c.at("rows").get<std::size_t>() != counts.rows()) {
        throw ParseError("report row count disagrees with its family counts");
      }
      report.counts = counts;
    }
    report.witness = take<std::vector<std::string>>(doc, "witness");
    report.nu = take<std::vector<std::string>>(doc, "nu");
    report.unique = take<bool>(doc, "unique");
    report.certificate = take<std::vector<std::string>>(doc, "certificate");
    report.certificate_verified = take<bool>(doc, "certificate_verified");
    if (doc.contains("ontic_witness")) {
      const json& w = doc.at("ontic_witness");
      report.ontic_witness = OnticWitnessRecord{
          w.at("first_basis").get<std::size_t>(),
          w.at("second_basis").get<std::size_t>(),
          w.at("first_support").get<std::array<std::string, 2>>(),
          w.at("second_support").get<std::array<std::string, 2>>(),
          w.at("violated_identity").get<std::string>()};
    }
    report.notices = doc.at("notices").get<std::vector<std::string>>();
    report.elapsed_ms = doc.at("elapsed_ms").get<double>();
    return report;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace steering::tools
