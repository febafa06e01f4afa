#include "steering/ontic_model.hpp"

#include <cmath>
#include <type_traits>

#include "steering/errors.hpp"

namespace steering {
namespace {

bool nearly(double a, double b) { return std::abs(a - b) <= kConstructionTolerance; }

// Equality of two overlaps in the scenario's arithmetic regime.
bool same(const OverlapValue& a, const OverlapValue& b, ArithmeticMode mode) {
  if (mode == ArithmeticMode::exact) return *a.exact() == *b.exact();
  return nearly(a.approx(), b.approx());
}

bool equals_constant(const OverlapValue& v, int constant, ArithmeticMode mode) {
  if (mode == ArithmeticMode::exact) return *v.exact() == constant;
  return nearly(v.approx(), constant);
}

template <typename Scalar>
Scalar scalar_of(const OverlapValue& v);

template <>
Rational scalar_of<Rational>(const OverlapValue& v) {
  return *v.exact();
}

template <>
double scalar_of<double>(const OverlapValue& v) {
  return v.approx();
}

}  // namespace

const char* to_string(ArithmeticMode mode) {
  return mode == ArithmeticMode::exact ? "exact" : "floating";
}

const char* to_string(ConstraintFamily family) {
  switch (family) {
    case ConstraintFamily::support:
      return "support";
    case ConstraintFamily::normalization:
      return "normalization";
    case ConstraintFamily::born:
      return "born";
    case ConstraintFamily::mixture:
      return "mixture";
  }
  return "unknown";
}

OverlapValue::OverlapValue(Rational exact) : exact_(std::move(exact)) {
  exact_->canonicalize();
  approx_ = to_double(*exact_);
}

OverlapValue::OverlapValue(double approx) : approx_(approx) {
  if (!std::isfinite(approx)) throw InvariantViolation("overlap must be finite");
}

OverlapValue OverlapValue::complement() const {
  if (exact_) return OverlapValue(Rational(1 - *exact_));
  return OverlapValue(1.0 - approx_);
}

Scenario::Scenario(std::size_t n_bases, std::vector<OverlapValue> overlaps, ArithmeticMode mode)
    : n_bases_(n_bases), overlaps_(std::move(overlaps)), mode_(mode) {
  if (n_bases_ == 0) throw InvariantViolation("scenario needs at least one basis");
  if (n_bases_ > 16) throw InvariantViolation("scenario has too many bases for a cell model");
  const std::size_t n = n_states();
  if (overlaps_.size() != n * n) {
    throw DimensionMismatch("overlap matrix must be " + std::to_string(n) + "x" +
                            std::to_string(n));
  }
  // Floating scenarios carry approximations only, so equal inputs compare equal.
  if (mode_ == ArithmeticMode::floating) {
    for (auto& v : overlaps_) v = OverlapValue(v.approx());
  }
  for (const auto& v : overlaps_) {
    if (mode_ == ArithmeticMode::exact && !v.is_exact()) {
      throw InvariantViolation("exact scenario has an overlap without an exact value");
    }
    const bool in_range = mode_ == ArithmeticMode::exact
                              ? (*v.exact() >= 0 && *v.exact() <= 1)
                              : (v.approx() >= -kConstructionTolerance &&
                                 v.approx() <= 1.0 + kConstructionTolerance);
    if (!in_range) throw InvariantViolation("overlap outside [0, 1]");
  }
  const auto states = this->states();
  for (const auto& a : states) {
    for (const auto& b : states) {
      if (!same(overlap(a, b), overlap(b, a), mode_)) {
        throw InvariantViolation("overlap matrix is not symmetric");
      }
    }
    if (!equals_constant(overlap(a, a), 1, mode_)) {
      throw InvariantViolation("self-overlap of " + state_name(a) + " is not 1");
    }
    if (!equals_constant(overlap(a, {a.basis, 1 - a.outcome}), 0, mode_)) {
      throw InvariantViolation("states of basis " + std::to_string(a.basis) +
                               " are not orthogonal");
    }
  }
  for (const auto& s : states) {
    for (std::size_t b = 0; b < n_bases_; ++b) {
      const OverlapValue& p0 = overlap({b, 0}, s);
      const OverlapValue& p1 = overlap({b, 1}, s);
      const bool complete = mode_ == ArithmeticMode::exact
                                ? *p0.exact() + *p1.exact() == 1
                                : nearly(p0.approx() + p1.approx(), 1.0);
      if (!complete) {
        throw InvariantViolation("outcome probabilities of basis " + std::to_string(b) +
                                 " on " + state_name(s) + " do not sum to 1");
      }
    }
  }
}

Scenario Scenario::from_unbarred_overlaps(std::size_t n_bases,
                                          const std::vector<OverlapValue>& unbarred,
                                          ArithmeticMode mode) {
  if (unbarred.size() != n_bases * n_bases) {
    throw DimensionMismatch("unbarred overlap matrix must be N x N");
  }
  for (const auto& v : unbarred) {
    if (mode == ArithmeticMode::exact && !v.is_exact()) {
      throw InvariantViolation("exact scenario has an overlap without an exact value");
    }
  }
  for (std::size_t i = 0; i < n_bases; ++i) {
    if (!equals_constant(unbarred[i * n_bases + i], 1, mode)) {
      throw InvariantViolation("diagonal of the unbarred overlap matrix must be 1");
    }
  }
  const std::size_t n = 2 * n_bases;
  std::vector<OverlapValue> full(n * n, OverlapValue(0.0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ba = a / 2;
      const std::size_t bb = b / 2;
      const bool same_parity = (a % 2) == (b % 2);
      const OverlapValue& base = unbarred[ba * n_bases + bb];
      if (ba == bb) {
        full[a * n + b] = same_parity ? OverlapValue(Rational(1)) : OverlapValue(Rational(0));
      } else {
        full[a * n + b] = same_parity ? base : base.complement();
      }
    }
  }
  return Scenario(n_bases, std::move(full), mode);
}

Scenario Scenario::from_bases(std::span<const Basis> bases) {
  const std::size_t n = 2 * bases.size();
  std::vector<OverlapValue> full;
  full.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const PureState& sa = bases[a / 2].outcome(static_cast<int>(a % 2));
      const PureState& sb = bases[b / 2].outcome(static_cast<int>(b % 2));
      full.emplace_back(steering::overlap(sa, sb));
    }
  }
  return Scenario(bases.size(), std::move(full), ArithmeticMode::floating);
}

const OverlapValue& Scenario::overlap(StateLabel a, StateLabel b) const {
  return overlaps_[a.index() * n_states() + b.index()];
}

std::vector<StateLabel> Scenario::states() const {
  std::vector<StateLabel> out;
  out.reserve(n_states());
  for (std::size_t b = 0; b < n_bases_; ++b) {
    out.push_back({b, 0});
    out.push_back({b, 1});
  }
  return out;
}

Scenario two_basis_scenario(const OverlapValue& alpha, ArithmeticMode mode) {
  const OverlapValue one(Rational(1));
  return Scenario::from_unbarred_overlaps(2, {one, alpha, alpha, one}, mode);
}

Scenario bisected_scenario(const OverlapValue& alpha, const OverlapValue& beta,
                           ArithmeticMode mode) {
  const OverlapValue one(Rational(1));
  return Scenario::from_unbarred_overlaps(
      3, {one, alpha, beta, alpha, one, beta, beta, beta, one}, mode);
}

std::vector<Cell> enumerate_cells(const Scenario& scenario) {
  const CellLayout layout(scenario.n_bases());
  std::vector<Cell> cells;
  cells.reserve(layout.n_cells());
  for (std::size_t c = 0; c < layout.n_cells(); ++c) {
    Cell cell;
    for (std::size_t b = 0; b < layout.n_bases(); ++b) {
      cell.outcomes.push_back(layout.outcome_of(c, b));
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

ConstraintCounts expected_counts(std::size_t n_bases) {
  const std::size_t cells = std::size_t{1} << n_bases;
  ConstraintCounts counts;
  counts.variables = (2 * n_bases + 1) * cells;
  counts.support = 2 * n_bases * (cells / 2);
  counts.normalization = 2 * n_bases;
  counts.born = 2 * n_bases * (n_bases - 1) * 2;
  counts.mixture = n_bases * cells;
  return counts;
}

template <typename Scalar>
ConstraintCounts CellModel<Scalar>::counts() const {
  ConstraintCounts counts;
  counts.variables = system.n_vars();
  for (const auto& tag : tags) {
    switch (tag.family) {
      case ConstraintFamily::support:
        ++counts.support;
        break;
      case ConstraintFamily::normalization:
        ++counts.normalization;
        break;
      case ConstraintFamily::born:
        ++counts.born;
        break;
      case ConstraintFamily::mixture:
        ++counts.mixture;
        break;
    }
  }
  return counts;
}

template <typename Scalar>
CellModel<Scalar> build_constraints(const Scenario& scenario) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    if (scenario.mode() != ArithmeticMode::exact) {
      throw PreconditionFailed(
          "exact constraints need a scenario whose overlaps are all rational");
    }
  }
  const auto states = scenario.states();
  if (scenario.n_bases() >= 2) {
    for (const auto& a : states) {
      for (const auto& b : states) {
        if (a.basis == b.basis) continue;
        const OverlapValue& v = scenario.overlap(a, b);
        if (equals_constant(v, 0, scenario.mode()) || equals_constant(v, 1, scenario.mode())) {
          throw DegenerateScenario("overlap between " + state_name(a) + " and " +
                                   state_name(b) + " must lie strictly between 0 and 1");
        }
      }
    }
  }

  const CellLayout layout(scenario.n_bases());
  CellModel<Scalar> model{layout, BasicLinearSystem<Scalar>(layout.n_variables()), {}};
  using Terms = std::vector<std::pair<std::size_t, Scalar>>;
  auto emit = [&model](const Terms& terms, Scalar rhs, RowTag tag) {
    model.system.add_sparse_row(terms, std::move(rhs));
    model.tags.push_back(std::move(tag));
  };

  for (const auto& s : states) {
    for (std::size_t c = 0; c < layout.n_cells(); ++c) {
      if (layout.outcome_of(c, s.basis) == s.outcome) continue;
      emit({{layout.mass_index(s, c), Scalar(1)}}, Scalar(0),
           {ConstraintFamily::support, s, std::nullopt, c, std::nullopt});
    }
  }
  for (const auto& s : states) {
    Terms terms;
    for (std::size_t c = 0; c < layout.n_cells(); ++c) {
      terms.emplace_back(layout.mass_index(s, c), Scalar(1));
    }
    emit(terms, Scalar(1), {ConstraintFamily::normalization, s, std::nullopt, std::nullopt,
                            std::nullopt});
  }
  for (const auto& s : states) {
    for (std::size_t b = 0; b < layout.n_bases(); ++b) {
      if (b == s.basis) continue;
      for (int u = 0; u < 2; ++u) {
        Terms terms;
        for (std::size_t c = 0; c < layout.n_cells(); ++c) {
          if (layout.outcome_of(c, b) == u) terms.emplace_back(layout.mass_index(s, c), Scalar(1));
        }
        emit(terms, scalar_of<Scalar>(scenario.overlap({b, u}, s)),
             {ConstraintFamily::born, s, b, std::nullopt, u});
      }
    }
  }
  const Scalar half = Scalar(1) / Scalar(2);
  for (std::size_t b = 0; b < layout.n_bases(); ++b) {
    for (std::size_t c = 0; c < layout.n_cells(); ++c) {
      emit({{layout.mass_index({b, 0}, c), half},
            {layout.mass_index({b, 1}, c), half},
            {layout.nu_index(c), Scalar(-1)}},
           Scalar(0), {ConstraintFamily::mixture, std::nullopt, b, c, std::nullopt});
    }
  }
  return model;
}

template <typename Scalar>
RegionTable<Scalar> project_to_regions(const CellModel<Scalar>& model,
                                       std::type_identity_t<std::span<const Scalar>> assignment,
                                       std::size_t first_basis, std::size_t second_basis) {
  const CellLayout& layout = model.layout;
  if (layout.n_bases() < 2) throw PreconditionFailed("region projection needs two bases");
  if (first_basis >= layout.n_bases() || second_basis >= layout.n_bases() ||
      first_basis == second_basis) {
    throw PreconditionFailed("region projection needs two distinct valid basis indices");
  }
  if (assignment.size() != layout.n_variables()) {
    throw DimensionMismatch("assignment length differs from the model's variable count");
  }
  auto region_of = [&](std::size_t c) {
    return static_cast<std::size_t>(2 * layout.outcome_of(c, first_basis) +
                                    layout.outcome_of(c, second_basis));
  };
  const std::array<Scalar, 4> zero{Scalar(0), Scalar(0), Scalar(0), Scalar(0)};
  RegionTable<Scalar> table{first_basis, second_basis,
                            std::vector<std::array<Scalar, 4>>(layout.n_states(), zero), zero};
  for (std::size_t c = 0; c < layout.n_cells(); ++c) {
    const std::size_t r = region_of(c);
    for (std::size_t b = 0; b < layout.n_bases(); ++b) {
      for (int o = 0; o < 2; ++o) {
        const StateLabel s{b, o};
        table.masses[s.index()][r] += assignment[layout.mass_index(s, c)];
      }
    }
    table.nu[r] += assignment[layout.nu_index(c)];
  }
  return table;
}

std::string state_name(StateLabel state) {
  static constexpr const char* kLetters[] = {"x", "y", "z"};
  std::string name = state.basis < 3 ? kLetters[state.basis] : "e" + std::to_string(state.basis);
  if (state.outcome == 1) name[0] = static_cast<char>(name[0] - 'a' + 'A');
  return name;
}

OnticVerdict check_ontic_consistency(const Scenario& scenario) {
  const std::size_t n = scenario.n_bases();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const OverlapValue& v = scenario.overlap({a, 0}, {b, 0});
      if (equals_constant(v, 0, scenario.mode()) || equals_constant(v, 1, scenario.mode())) {
        continue;
      }
      // Distinct pure states sit on distinct ontic points, so the supports
      // {l_a+, l_a-} and {l_b+, l_b-} are disjoint and the mixtures differ.
      auto point = [](StateLabel s) { return "lambda_" + state_name(s); };
      OnticContradiction witness{a, b,
                                 {point({a, 0}), point({a, 1})},
                                 {point({b, 0}), point({b, 1})},
                                 ""};
      witness.violated_identity = "1/2 delta(" + witness.first_support[0] + ") + 1/2 delta(" +
                                  witness.first_support[1] + ") = 1/2 delta(" +
                                  witness.second_support[0] + ") + 1/2 delta(" +
                                  witness.second_support[1] + ")";
      return witness;
    }
  }
  return OnticConsistent{};
}

template struct CellModel<Rational>;
template struct CellModel<double>;
template CellModel<Rational> build_constraints<Rational>(const Scenario&);
template CellModel<double> build_constraints<double>(const Scenario&);
template RegionTable<Rational> project_to_regions<Rational>(const CellModel<Rational>&,
                                                            std::span<const Rational>,
                                                            std::size_t, std::size_t);
template RegionTable<double> project_to_regions<double>(const CellModel<double>&,
                                                        std::span<const double>, std::size_t,
                                                        std::size_t);

}  // namespace steering
