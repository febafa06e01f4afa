#include "steering_tools/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <system_error>

namespace steering::tools {
namespace {

using nlohmann::json;

struct Entry {
  std::optional<Rational> exact;
  double approx = 0.0;
};

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ParseError("not a number: '" + text + "'");
  }
  return value;
}

Entry parse_entry(const json& value) {
  if (value.is_number_integer()) {
    const auto v = value.get<long long>();
    return {Rational(std::to_string(v)), static_cast<double>(v)};
  }
  if (value.is_number()) return {std::nullopt, value.get<double>()};
  if (value.is_string()) {
    const auto text = value.get<std::string>();
    if (is_rational_literal(text)) {
      Rational exact = parse_rational(text);
      const double approx = to_double(exact);
      return {std::move(exact), approx};
    }
    return {std::nullopt, parse_double(text)};
  }
  throw ParseError("expected a number or a numeric string, got " + value.dump());
}

double parse_real(const json& value) { return parse_entry(value).approx; }

Rational parse_exact(const json& value) {
  auto entry = parse_entry(value);
  if (!entry.exact) throw ParseError("exact system has a non-rational entry " + value.dump());
  return *entry.exact;
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

PureState parse_ket(const json& value, std::vector<std::string>& notices,
                    const std::string& what) {
  if (!value.is_array() || value.size() != 4) {
    throw ParseError(what + ": expected [re0, im0, re1, im1]");
  }
  const Complex c0 = complex_amp(parse_real(value[0]), parse_real(value[1]));
  const Complex c1 = complex_amp(parse_real(value[2]), parse_real(value[3]));
  const double norm = std::norm(c0) + std::norm(c1);
  if (std::abs(norm - 1.0) > kConstructionTolerance) {
    notices.push_back(what + " was renormalized (squared norm " + format_scalar(norm) + ")");
  }
  return PureState::normalized(c0, c1);
}

ParsedScenario parse_abstract(const json& doc) {
  const json& n_json = require(doc, "n_bases");
  if (!n_json.is_number_integer() || n_json.get<long long>() < 1) {
    throw ParseError("'n_bases' must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(n_json.get<long long>());
  const json& matrix = require(doc, "overlaps");
  if (!matrix.is_array() || (matrix.size() != n && matrix.size() != 2 * n)) {
    throw ParseError("'overlaps' must be an N x N or 2N x 2N matrix");
  }
  const std::size_t dim = matrix.size();
  bool all_exact = true;
  std::vector<OverlapValue> values;
  values.reserve(dim * dim);
  for (const auto& row : matrix) {
    if (!row.is_array() || row.size() != dim) throw ParseError("'overlaps' must be square");
    for (const auto& cell : row) {
      Entry e = parse_entry(cell);
      if (e.exact) {
        values.emplace_back(*e.exact);
      } else {
        all_exact = false;
        values.emplace_back(e.approx);
      }
    }
  }

  ArithmeticMode mode = all_exact ? ArithmeticMode::exact : ArithmeticMode::floating;
  std::vector<std::string> notices;
  if (doc.contains("arithmetic")) {
    const auto requested = doc.at("arithmetic").get<std::string>();
    if (requested == "floating") {
      mode = ArithmeticMode::floating;
    } else if (requested != "exact") {
      throw ParseError("'arithmetic' must be \"exact\" or \"floating\"");
    } else if (!all_exact) {
      throw ParseError("exact arithmetic requested but some overlaps are not rational");
    }
  }
  if (mode == ArithmeticMode::floating) {
    notices.push_back("floating arithmetic: verdicts use tolerance 1e-9");
  }

  if (dim == n) {
    return {Scenario::from_unbarred_overlaps(n, values, mode), {}, std::move(notices)};
  }
  return {Scenario(n, std::move(values), mode), {}, std::move(notices)};
}

ParsedScenario parse_quantum(const json& doc) {
  const json& list = require(doc, "bases");
  if (!list.is_array() || list.empty()) throw ParseError("'bases' must be a non-empty array");
  std::vector<std::string> notices;
  std::vector<Basis> bases;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& item = list[i];
    const std::string what = "basis " + std::to_string(i);
    if (item.is_array()) {
      bases.push_back(Basis::from_state(parse_ket(item, notices, what)));
    } else if (item.is_object() && item.contains("bloch")) {
      const json& angles = item.at("bloch");
      if (!angles.is_array() || angles.empty() || angles.size() > 2) {
        throw ParseError(what + ": 'bloch' must be [theta] or [theta, phi]");
      }
      const double phi = angles.size() == 2 ? parse_real(angles[1]) : 0.0;
      bases.push_back(Basis::from_state(PureState::from_bloch(parse_real(angles[0]), phi)));
    } else if (item.is_object() && item.contains("bisect")) {
      const json& pair = item.at("bisect");
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
          !pair[1].is_number_integer()) {
        throw ParseError(what + ": 'bisect' must be a pair of earlier basis indices");
      }
      const auto a = pair[0].get<long long>();
      const auto b = pair[1].get<long long>();
      if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= i || static_cast<std::size_t>(b) >= i) {
        throw ParseError(what + ": 'bisect' must reference earlier bases");
      }
      bases.push_back(Basis::from_state(bisecting_state(
          bases[static_cast<std::size_t>(a)].plus(), bases[static_cast<std::size_t>(b)].plus())));
    } else {
      throw ParseError(what + ": expected [re0, im0, re1, im1], {\"bloch\": ...} or "
                              "{\"bisect\": ...}");
    }
  }
  notices.push_back("quantum-mode scenario: exact arithmetic unavailable, using the floating "
                    "solver (tolerance 1e-9)");
  return {Scenario::from_bases(bases), std::move(bases), std::move(notices)};
}

template <typename Scalar>
json system_json(const BasicLinearSystem<Scalar>& system, const char* arithmetic) {
  json rows = json::array();
  for (const auto& row : system.rows()) {
    json coefficients = json::array();
    for (const auto& c : row.coefficients) coefficients.push_back(format_scalar(c));
    rows.push_back({{"coefficients", std::move(coefficients)}, {"rhs", format_scalar(row.rhs)}});
  }
  return {{"arithmetic", arithmetic}, {"n_vars", system.n_vars()}, {"rows", std::move(rows)}};
}

template <typename Scalar, typename Parse>
BasicLinearSystem<Scalar> parse_rows(const json& doc, std::size_t n_vars, Parse parse) {
  BasicLinearSystem<Scalar> system(n_vars);
  const json& rows = require(doc, "rows");
  if (!rows.is_array()) throw ParseError("'rows' must be an array");
  for (const auto& row : rows) {
    const json& coefficients = require(row, "coefficients");
    if (!coefficients.is_array()) throw ParseError("'coefficients' must be an array");
    std::vector<Scalar> values;
    for (const auto& c : coefficients) values.push_back(parse(c));
    system.add_row(std::move(values), parse(require(row, "rhs")));
  }
  return system;
}

}  // namespace

std::vector<Rational> parse_exact_vector(const json& doc) {
  if (!doc.is_array()) throw ParseError("expected an array of numbers");
  std::vector<Rational> out;
  for (const auto& v : doc) out.push_back(parse_exact(v));
  return out;
}

std::vector<double> parse_real_vector(const json& doc) {
  if (!doc.is_array()) throw ParseError("expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : doc) out.push_back(parse_real(v));
  return out;
}

std::string format_scalar(const Rational& value) { return to_string(value); }

std::string format_scalar(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

ParsedScenario parse_scenario(const json& doc) {
  try {
    const auto mode = require(doc, "mode").get<std::string>();
    if (mode == "abstract") return parse_abstract(doc);
    if (mode == "quantum") return parse_quantum(doc);
    throw ParseError("'mode' must be \"abstract\" or \"quantum\"");
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed scenario: ") + e.what());
  }
}

json scenario_to_json(const Scenario& scenario) {
  const std::size_t n = scenario.n_states();
  json matrix = json::array();
  for (std::size_t a = 0; a < n; ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < n; ++b) {
      const OverlapValue& v = scenario.overlaps()[a * n + b];
      row.push_back(v.exact() ? format_scalar(*v.exact()) : format_scalar(v.approx()));
    }
    matrix.push_back(std::move(row));
  }
  return {{"mode", "abstract"},
          {"arithmetic", to_string(scenario.mode())},
          {"n_bases", scenario.n_bases()},
          {"overlaps", std::move(matrix)}};
}

Ensemble parse_ensemble(const json& doc) {
  try {
    const json& members = require(doc, "members");
    if (!members.is_array() || members.empty()) {
      throw ParseError("'members' must be a non-empty array");
    }
    std::vector<std::string> ignored;
    std::vector<Ensemble::Member> parsed;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const json& m = members[i];
      parsed.push_back({parse_real(require(m, "weight")),
                        parse_ket(require(m, "state"), ignored, "member " + std::to_string(i))});
    }
    return Ensemble(std::move(parsed));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed ensemble: ") + e.what());
  }
}

json system_to_json(const ExactSystem& system) { return system_json(system, "exact"); }
json system_to_json(const FloatSystem& system) { return system_json(system, "floating"); }

std::variant<ExactSystem, FloatSystem> parse_system(const json& doc) {
  try {
    const json& n_json = require(doc, "n_vars");
    if (!n_json.is_number_integer() || n_json.get<long long>() < 0) {
      throw ParseError("'n_vars' must be a non-negative integer");
    }
    const auto n_vars = static_cast<std::size_t>(n_json.get<long long>());
    const auto arithmetic = doc.value("arithmetic", std::string("exact"));
    if (arithmetic == "exact") return parse_rows<Rational>(doc, n_vars, parse_exact);
    if (arithmetic == "floating") return parse_rows<double>(doc, n_vars, parse_real);
    throw ParseError("'arithmetic' must be \"exact\" or \"floating\"");
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed linear system: ") + e.what());
  }
}

}  // namespace steering::tools
