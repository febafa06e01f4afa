#pragma once

// Hidden-variable cell model of a qubit steering scenario with rho_B = I/2.
//
// N measured bases partition the ontic space into 2^N cells, one per
// outcome vector. Each of the 2N steered states is a distribution over the
// cells (its masses), and locality forces every basis's equal-weight
// mixture to coincide with one common distribution nu.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "steering/linear_system.hpp"
#include "steering/quantum.hpp"
#include "steering/rational.hpp"

namespace steering {

enum class ArithmeticMode { exact, floating };

const char* to_string(ArithmeticMode mode);

// An overlap |<a|b>|^2, optionally carried exactly.
class OverlapValue {
 public:
  explicit OverlapValue(Rational exact);
  explicit OverlapValue(double approx);

  const std::optional<Rational>& exact() const { return exact_; }
  double approx() const { return approx_; }
  bool is_exact() const { return exact_.has_value(); }

  // 1 - value, preserving exactness.
  OverlapValue complement() const;

  friend bool operator==(const OverlapValue&, const OverlapValue&) = default;

 private:
  std::optional<Rational> exact_;
  double approx_;
};

// Outcome `outcome` (0 = unbarred state, 1 = its orthocomplement) of basis
// `basis`.
struct StateLabel {
  std::size_t basis;
  int outcome;

  std::size_t index() const { return 2 * basis + static_cast<std::size_t>(outcome); }
  friend bool operator==(const StateLabel&, const StateLabel&) = default;
};

class Scenario {
 public:
  // `overlaps` is the row-major 2N x 2N matrix indexed by StateLabel::index().
  // Validates: symmetric, unit diagonal, zero within a basis, entries in
  // [0, 1], completeness overlap(u, s) + overlap(u', s) = 1 for every basis
  // {u, u'}, and (exact mode) an exact value on every entry.
  Scenario(std::size_t n_bases, std::vector<OverlapValue> overlaps, ArithmeticMode mode);

  // Expands the N x N overlaps among the unbarred states using the qubit
  // identities |<X|Y>|^2 = |<x|y>|^2 and |<x|Y>|^2 = 1 - |<x|y>|^2.
  static Scenario from_unbarred_overlaps(std::size_t n_bases,
                                         const std::vector<OverlapValue>& unbarred,
                                         ArithmeticMode mode);
  // Floating scenario with overlaps computed from explicit bases.
  static Scenario from_bases(std::span<const Basis> bases);

  std::size_t n_bases() const { return n_bases_; }
  std::size_t n_states() const { return 2 * n_bases_; }
  ArithmeticMode mode() const { return mode_; }
  const OverlapValue& overlap(StateLabel a, StateLabel b) const;
  const std::vector<OverlapValue>& overlaps() const { return overlaps_; }
  std::vector<StateLabel> states() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  std::size_t n_bases_;
  std::vector<OverlapValue> overlaps_;
  ArithmeticMode mode_;
};

// The two-basis scenario with |<x|y>|^2 = alpha.
Scenario two_basis_scenario(const OverlapValue& alpha, ArithmeticMode mode);
// Adds a third basis z with |<z|x>|^2 = |<z|y>|^2 = beta.
Scenario bisected_scenario(const OverlapValue& alpha, const OverlapValue& beta,
                           ArithmeticMode mode);

// Outcome vector of one cell: entry b is the certain outcome of basis b.
struct Cell {
  std::vector<int> outcomes;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// All 2^N cells in lexicographic order (basis 0 most significant).
std::vector<Cell> enumerate_cells(const Scenario& scenario);

// Variable indexing of a cell model.
class CellLayout {
 public:
  explicit CellLayout(std::size_t n_bases) : n_bases_(n_bases) {}

  std::size_t n_bases() const { return n_bases_; }
  std::size_t n_cells() const { return std::size_t{1} << n_bases_; }
  std::size_t n_states() const { return 2 * n_bases_; }
  std::size_t n_variables() const { return (n_states() + 1) * n_cells(); }

  std::size_t mass_index(StateLabel state, std::size_t cell) const {
    return state.index() * n_cells() + cell;
  }
  std::size_t nu_index(std::size_t cell) const { return n_states() * n_cells() + cell; }
  // Certain outcome of `basis` on cell number `cell`.
  int outcome_of(std::size_t cell, std::size_t basis) const {
    return static_cast<int>((cell >> (n_bases_ - 1 - basis)) & 1U);
  }

 private:
  std::size_t n_bases_;
};

enum class ConstraintFamily { support, normalization, born, mixture };

const char* to_string(ConstraintFamily family);

// Provenance of one generated row.
struct RowTag {
  ConstraintFamily family;
  // Steered state constrained (support, normalization, born).
  std::optional<StateLabel> state;
  // Basis whose outcome is summed over (born) or mixed (mixture).
  std::optional<std::size_t> basis;
  // Cell index (support, mixture), or the summed outcome (born).
  std::optional<std::size_t> cell;
  std::optional<int> outcome;
};

struct ConstraintCounts {
  std::size_t variables = 0;
  std::size_t support = 0;
  std::size_t normalization = 0;
  std::size_t born = 0;
  std::size_t mixture = 0;

  std::size_t rows() const { return support + normalization + born + mixture; }
  friend bool operator==(const ConstraintCounts&, const ConstraintCounts&) = default;
};

// Closed-form row and variable counts for N bases.
ConstraintCounts expected_counts(std::size_t n_bases);

template <typename Scalar>
struct CellModel {
  CellLayout layout;
  BasicLinearSystem<Scalar> system;
  // tags[i] describes system.row(i).
  std::vector<RowTag> tags;

  ConstraintCounts counts() const;
  // Copy keeping only the rows whose tag satisfies `keep`.
  template <typename Predicate>
  CellModel filtered(Predicate keep) const {
    CellModel out{layout, BasicLinearSystem<Scalar>(system.n_vars()), {}};
    for (std::size_t i = 0; i < tags.size(); ++i) {
      if (!keep(tags[i])) continue;
      out.system.add_row(system.row(i).coefficients, system.row(i).rhs);
      out.tags.push_back(tags[i]);
    }
    return out;
  }
};

using ExactCellModel = CellModel<Rational>;
using FloatCellModel = CellModel<double>;

// Emits the support, normalization, Born-rule and noncontextual-mixture
// equalities. Throws DegenerateScenario when N >= 2 and a cross-basis
// overlap is 0 or 1, and PreconditionFailed when exact arithmetic is asked
// of a scenario without exact overlaps.
template <typename Scalar>
CellModel<Scalar> build_constraints(const Scenario& scenario);

// Masses aggregated over the four regions of a basis pair (first, second):
// region r = 2 * outcome(first) + outcome(second), matching S1..S4.
template <typename Scalar>
struct RegionTable {
  std::size_t first_basis;
  std::size_t second_basis;
  // masses[state.index()][region]
  std::vector<std::array<Scalar, 4>> masses;
  std::array<Scalar, 4> nu;

  const std::array<Scalar, 4>& of(StateLabel state) const { return masses[state.index()]; }
};

// Aggregates a model assignment onto the regions of a basis pair. Requires
// N >= 2 and distinct valid indices.
template <typename Scalar>
RegionTable<Scalar> project_to_regions(const CellModel<Scalar>& model,
                                       std::type_identity_t<std::span<const Scalar>> assignment,
                                       std::size_t first_basis, std::size_t second_basis);

// The psi-ontic point-mass model contradiction between two bases.
struct OnticContradiction {
  std::size_t first_basis;
  std::size_t second_basis;
  // Point supports of the two equal-weight mixtures; labels like "lambda_0+".
  std::array<std::string, 2> first_support;
  std::array<std::string, 2> second_support;
  std::string violated_identity;
};

struct OnticConsistent {};

using OnticVerdict = std::variant<OnticConsistent, OnticContradiction>;

// Models every steered state as a point mass at its own ontic point.
// Locality demands 1/2 d(l_u) + 1/2 d(l_u') = 1/2 d(l_v) + 1/2 d(l_v') for
// any two bases, which fails whenever the two bases are distinct (some
// cross overlap strictly inside (0, 1)) since the supports differ.
OnticVerdict check_ontic_consistency(const Scenario& scenario);

std::string state_name(StateLabel state);

extern template CellModel<Rational> build_constraints<Rational>(const Scenario&);
extern template CellModel<double> build_constraints<double>(const Scenario&);

}  // namespace steering
