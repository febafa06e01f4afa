#pragma once

// Feasibility of A x = b, x >= 0 by phase-1 simplex with Bland's rule.
//
// Exact systems (Rational) give exactly correct verdicts. Floating systems
// use kFeasibilityTolerance on residuals and on the phase-1 optimum.
// Infeasibility is always backed by a Farkas vector u with u^T A <= 0 and
// u^T b > 0, read off the final phase-1 reduced costs of the artificials.

#include <optional>
#include <span>
#include <type_traits>
#include <variant>
#include <vector>

#include "steering/linear_system.hpp"

namespace steering {

inline constexpr double kFeasibilityTolerance = 1e-9;
// Lower bound accepted for floating witness entries.
inline constexpr double kNonnegativityTolerance = 1e-12;

enum class Verdict { feasible, infeasible };

const char* to_string(Verdict verdict);

template <typename Scalar>
struct FeasibleWitness {
  std::vector<Scalar> assignment;
  friend bool operator==(const FeasibleWitness&, const FeasibleWitness&) = default;
};

template <typename Scalar>
struct FarkasCertificate {
  // One multiplier per equality row.
  std::vector<Scalar> multipliers;
  friend bool operator==(const FarkasCertificate&, const FarkasCertificate&) = default;
};

template <typename Scalar>
class FeasibilityResult {
 public:
  using Witness = std::variant<FeasibleWitness<Scalar>, FarkasCertificate<Scalar>>;

  explicit FeasibilityResult(Witness witness) : witness_(std::move(witness)) {}

  Verdict verdict() const {
    return std::holds_alternative<FeasibleWitness<Scalar>>(witness_) ? Verdict::feasible
                                                                     : Verdict::infeasible;
  }
  bool feasible() const { return verdict() == Verdict::feasible; }

  // Precondition: feasible().
  const std::vector<Scalar>& assignment() const {
    return std::get<FeasibleWitness<Scalar>>(witness_).assignment;
  }
  // Precondition: !feasible().
  const std::vector<Scalar>& certificate() const {
    return std::get<FarkasCertificate<Scalar>>(witness_).multipliers;
  }
  const Witness& witness() const { return witness_; }

 private:
  Witness witness_;
};

template <typename Scalar>
FeasibilityResult<Scalar> solve_feasibility(const BasicLinearSystem<Scalar>& system);

// Checks a Farkas vector independently of the solver: every component of
// u^T A must be <= 0 (exact) or <= 1e-9 (floating) and u^T b > 0 (exact) or
// > 1e-9 (floating). Throws DimensionMismatch if u has the wrong length.
template <typename Scalar>
bool verify_certificate(const BasicLinearSystem<Scalar>& system,
                        std::type_identity_t<std::span<const Scalar>> u);

// Residual check of a candidate point: A x = b exactly (or within 1e-9) and
// x >= 0 exactly (or >= -1e-12).
template <typename Scalar>
bool satisfies(const BasicLinearSystem<Scalar>& system,
               std::type_identity_t<std::span<const Scalar>> x);

// The feasible point if the feasible set is a single point, certified by
// minimizing and maximizing every coordinate. Throws PreconditionFailed on
// an infeasible system.
template <typename Scalar>
std::optional<std::vector<Scalar>> unique_solution_if_any(
    const BasicLinearSystem<Scalar>& system);

extern template FeasibilityResult<Rational> solve_feasibility<Rational>(const ExactSystem&);
extern template FeasibilityResult<double> solve_feasibility<double>(const FloatSystem&);
extern template bool verify_certificate<Rational>(const ExactSystem&, std::span<const Rational>);
extern template bool verify_certificate<double>(const FloatSystem&, std::span<const double>);
extern template bool satisfies<Rational>(const ExactSystem&, std::span<const Rational>);
extern template bool satisfies<double>(const FloatSystem&, std::span<const double>);
extern template std::optional<std::vector<Rational>> unique_solution_if_any<Rational>(
    const ExactSystem&);
extern template std::optional<std::vector<double>> unique_solution_if_any<double>(
    const FloatSystem&);

}  // namespace steering
