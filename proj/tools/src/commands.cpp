#include "steering_tools/commands.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <cmath>
#include <future>
#include <ostream>
#include <thread>

#include "steering/errors.hpp"
#include "steering/feasibility.hpp"
#include "steering/ontic_model.hpp"

namespace steering::tools {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename Scalar>
std::vector<std::string> format_all(const std::vector<Scalar>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(format_scalar(v));
  return out;
}

template <typename Scalar>
void fill_check(const Scenario& scenario, SteeringReport& report) {
  const CellModel<Scalar> model = build_constraints<Scalar>(scenario);
  report.counts = model.counts();
  const auto result = solve_feasibility(model.system);
  report.verdict = to_string(result.verdict());
  if (result.feasible()) {
    const auto unique = unique_solution_if_any(model.system);
    const std::vector<Scalar>& point = unique ? *unique : result.assignment();
    report.unique = unique.has_value();
    report.witness = format_all(point);
    std::vector<Scalar> nu;
    for (std::size_t c = 0; c < model.layout.n_cells(); ++c) {
      nu.push_back(point[model.layout.nu_index(c)]);
    }
    report.nu = format_all(nu);
  } else {
    report.certificate = format_all(result.certificate());
    report.certificate_verified = verify_certificate(model.system, result.certificate());
  }
}

template <typename Scalar>
json verify_against(const BasicLinearSystem<Scalar>& system, const std::vector<Scalar>& u,
                    const char* arithmetic) {
  return {{"command", "verify-cert"},
          {"arithmetic", arithmetic},
          {"rows", system.n_rows()},
          {"variables", system.n_vars()},
          {"valid", verify_certificate(system, u)}};
}

Rational parse_number_exact(const std::string& text) {
  if (is_rational_literal(text)) return parse_rational(text);
  return parse_decimal_exact(text);
}

SweepRow two_basis_point(const Rational& alpha) {
  const Scenario scenario = two_basis_scenario(OverlapValue(alpha), ArithmeticMode::exact);
  const auto model = build_constraints<Rational>(scenario);
  return {format_scalar(to_double(alpha)), "NA", 2,
          to_string(solve_feasibility(model.system).verdict())};
}

Verdict bisected_verdict(const Rational& alpha, const Rational& beta) {
  const Scenario scenario =
      bisected_scenario(OverlapValue(alpha), OverlapValue(beta), ArithmeticMode::exact);
  return solve_feasibility(build_constraints<Rational>(scenario).system).verdict();
}

// |0>, the state at Bloch polar angle acos(2 alpha - 1), and their bisector.
SweepRow quantum_point(const Rational& alpha) {
  const double a = to_double(alpha);
  const PureState x = PureState::zero();
  const PureState y = PureState::from_bloch(std::acos(2.0 * a - 1.0));
  const PureState z = bisecting_state(x, y);
  const std::vector<Basis> bases{Basis::from_state(x), Basis::from_state(y),
                                 Basis::from_state(z)};
  const Scenario scenario = Scenario::from_bases(bases);
  const auto model = build_constraints<double>(scenario);
  return {format_scalar(a), format_scalar(overlap(z, x)), 3,
          to_string(solve_feasibility(model.system).verdict())};
}

}  // namespace

SteeringReport cmd_check(const ParsedScenario& parsed) {
  const auto start = Clock::now();
  SteeringReport report;
  report.command = "check";
  report.scenario = scenario_to_json(parsed.scenario);
  report.arithmetic = to_string(parsed.scenario.mode());
  report.notices = parsed.notices;
  if (parsed.scenario.mode() == ArithmeticMode::exact) {
    fill_check<Rational>(parsed.scenario, report);
  } else {
    fill_check<double>(parsed.scenario, report);
  }
  report.elapsed_ms = elapsed_ms(start);
  return report;
}

SteeringReport cmd_check(const std::filesystem::path& path) {
  return cmd_check(parse_scenario(load_json_file(path)));
}

SteeringReport cmd_ontic(const ParsedScenario& parsed) {
  const auto start = Clock::now();
  SteeringReport report;
  report.command = "ontic";
  report.scenario = scenario_to_json(parsed.scenario);
  report.arithmetic = to_string(parsed.scenario.mode());
  report.notices = parsed.notices;
  const OnticVerdict verdict = check_ontic_consistency(parsed.scenario);
  if (const auto* c = std::get_if<OnticContradiction>(&verdict)) {
    report.verdict = "contradiction";
    report.ontic_witness = OnticWitnessRecord{c->first_basis, c->second_basis, c->first_support,
                                              c->second_support, c->violated_identity};
  } else {
    report.verdict = "consistent";
  }
  report.elapsed_ms = elapsed_ms(start);
  return report;
}

SteeringReport cmd_ontic(const std::filesystem::path& path) {
  return cmd_ontic(parse_scenario(load_json_file(path)));
}

json povm_report(const Ensemble& ensemble) {
  const Povm povm = steering_povm(ensemble);
  json elements = json::array();
  json probabilities = json::array();
  json fidelities = json::array();
  Matrix2 sum;
  double worst_state_error = 0.0;
  double worst_probability_error = 0.0;
  for (std::size_t i = 0; i < povm.size(); ++i) {
    const Matrix2& e = povm.elements()[i];
    sum += e;
    json entries = json::array();
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) entries.push_back({e(r, c).real(), e(r, c).imag()});
    }
    elements.push_back(std::move(entries));

    const auto& member = ensemble.members()[i];
    const ConditionalOutcome outcome = conditional_state(e);
    probabilities.push_back(outcome.probability);
    worst_probability_error =
        std::max(worst_probability_error, std::abs(outcome.probability - member.weight));
    if (outcome.state) {
      const Matrix2& rho = outcome.state->entries();
      const Complex c0 = member.state.c0();
      const Complex c1 = member.state.c1();
      const Complex fidelity = std::conj(c0) * (rho(0, 0) * c0 + rho(0, 1) * c1) +
                               std::conj(c1) * (rho(1, 0) * c0 + rho(1, 1) * c1);
      fidelities.push_back(fidelity.real());
      worst_state_error =
          std::max(worst_state_error, rho.max_abs_diff(member.state.projector()));
    } else {
      fidelities.push_back(nullptr);
    }
  }
  return {{"command", "povm"},
          {"elements", std::move(elements)},
          {"probabilities", std::move(probabilities)},
          {"fidelities", std::move(fidelities)},
          {"max_state_error", worst_state_error},
          {"max_probability_error", worst_probability_error},
          {"identity_error", sum.max_abs_diff(Matrix2::identity())}};
}

json cmd_povm(const std::filesystem::path& path) {
  return povm_report(parse_ensemble(load_json_file(path)));
}

json verify_cert_report(const json& doc) {
  if (!doc.is_object() || !doc.contains("certificate")) {
    throw ParseError("missing field 'certificate'");
  }
  const json& certificate = doc.at("certificate");
  if (doc.contains("system")) {
    const auto system = parse_system(doc.at("system"));
    if (const auto* exact = std::get_if<ExactSystem>(&system)) {
      return verify_against(*exact, parse_exact_vector(certificate), "exact");
    }
    return verify_against(std::get<FloatSystem>(system), parse_real_vector(certificate),
                          "floating");
  }
  if (!doc.contains("scenario")) throw ParseError("need a 'system' or a 'scenario'");
  const Scenario scenario = parse_scenario(doc.at("scenario")).scenario;
  if (scenario.mode() == ArithmeticMode::exact) {
    return verify_against(build_constraints<Rational>(scenario).system,
                          parse_exact_vector(certificate), "exact");
  }
  return verify_against(build_constraints<double>(scenario).system,
                        parse_real_vector(certificate), "floating");
}

json cmd_verify_cert(const std::filesystem::path& path) {
  return verify_cert_report(load_json_file(path));
}

std::vector<Rational> parse_grid(const std::string& grid) {
  const auto first = grid.find(':');
  const auto second = first == std::string::npos ? first : grid.find(':', first + 1);
  if (second == std::string::npos || grid.find(':', second + 1) != std::string::npos) {
    throw ParseError("grid must be start:stop:step, got '" + grid + "'");
  }
  Rational start;
  Rational stop;
  Rational step;
  try {
    start = parse_number_exact(grid.substr(0, first));
    stop = parse_number_exact(grid.substr(first + 1, second - first - 1));
    step = parse_number_exact(grid.substr(second + 1));
  } catch (const Error& e) {
    throw ParseError("grid '" + grid + "': " + e.what());
  }
  if (step <= 0) throw ParseError("grid step must be positive");
  if (stop < start) throw ParseError("grid is empty: stop < start");
  if (start <= 0 || stop >= 1) throw ParseError("grid must lie strictly inside (0, 1)");
  std::vector<Rational> points;
  for (Rational p = start; p <= stop; p += step) {
    points.push_back(p);
    if (points.size() > 1000000) throw ParseError("grid has too many points");
  }
  return points;
}

ThresholdResult threshold_search(const Rational& alpha, double width) {
  Rational lo(1, 2);
  Rational hi = 1 - Rational(1, 1 << 30);
  if (bisected_verdict(alpha, lo) != Verdict::feasible ||
      bisected_verdict(alpha, hi) != Verdict::infeasible) {
    throw PreconditionFailed("feasibility boundary is not bracketed by [1/2, 1)");
  }
  const Rational target = exact_from_double(width);
  while (hi - lo > target) {
    Rational mid = (lo + hi) / 2;
    if (bisected_verdict(alpha, mid) == Verdict::feasible) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double estimate = to_double(Rational((lo + hi) / 2));
  return {lo, hi, estimate};
}

std::vector<SweepRow> cmd_sweep(const SweepOptions& options) {
  if (options.n_bases != 2 && options.n_bases != 3) {
    throw ParseError("--bases must be 2 or 3");
  }
  const std::vector<Rational> alphas = parse_grid(options.alpha_grid);
  std::vector<Rational> betas;
  if (options.n_bases == 3 && options.beta_mode == BetaMode::grid) {
    if (!options.beta_grid) throw ParseError("--beta-mode grid needs --beta start:stop:step");
    betas = parse_grid(*options.beta_grid);
  }

  std::vector<std::function<SweepRow()>> tasks;
  for (const auto& alpha : alphas) {
    if (options.n_bases == 2) {
      tasks.emplace_back([alpha] { return two_basis_point(alpha); });
      continue;
    }
    switch (options.beta_mode) {
      case BetaMode::quantum:
        tasks.emplace_back([alpha] { return quantum_point(alpha); });
        break;
      case BetaMode::grid:
        for (const auto& beta : betas) {
          tasks.emplace_back([alpha, beta] {
            return SweepRow{format_scalar(to_double(alpha)), format_scalar(to_double(beta)), 3,
                            to_string(bisected_verdict(alpha, beta))};
          });
        }
        break;
      case BetaMode::threshold_search:
        tasks.emplace_back([alpha] {
          const ThresholdResult t = threshold_search(alpha);
          return SweepRow{format_scalar(to_double(alpha)), format_scalar(t.estimate), 3,
                          "boundary"};
        });
        break;
    }
  }

  const unsigned jobs = options.jobs != 0
                            ? options.jobs
                            : std::max(1U, std::thread::hardware_concurrency());
  std::vector<SweepRow> rows;
  rows.reserve(tasks.size());
  for (std::size_t begin = 0; begin < tasks.size(); begin += jobs) {
    const std::size_t end = std::min(tasks.size(), begin + jobs);
    std::vector<std::future<SweepRow>> batch;
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, tasks[i]));
    }
    for (auto& f : batch) rows.push_back(f.get());
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "alpha,beta,n_bases,verdict\n";
  for (const auto& row : rows) {
    out << row.alpha << ',' << row.beta << ',' << row.n_bases << ',' << row.verdict << '\n';
  }
}

}  // namespace steering::tools
