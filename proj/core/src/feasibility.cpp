#include "steering/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "steering/errors.hpp"

namespace steering {
namespace {

// Sign tests used by the pivoting rules. Exact arithmetic needs no slack;
// floating arithmetic treats magnitudes below the pivot tolerance as zero.
template <typename Scalar>
struct Signs;

template <>
struct Signs<Rational> {
  static bool negative(const Rational& v) { return sgn(v) < 0; }
  static bool positive(const Rational& v) { return sgn(v) > 0; }
  static bool nonzero(const Rational& v) { return sgn(v) != 0; }
  // Phase-1 optimum strictly above zero means infeasible.
  static bool infeasible_objective(const Rational& v) { return sgn(v) > 0; }
  static bool same_value(const Rational& a, const Rational& b) { return a == b; }
};

template <>
struct Signs<double> {
  static constexpr double kPivotTolerance = 1e-12;
  static bool negative(double v) { return v < -kPivotTolerance; }
  static bool positive(double v) { return v > kPivotTolerance; }
  static bool nonzero(double v) { return std::abs(v) > kPivotTolerance; }
  static bool infeasible_objective(double v) { return v > kFeasibilityTolerance; }
  static bool same_value(double a, double b) { return std::abs(a - b) <= kFeasibilityTolerance; }
};

enum class LpStatus { optimal, unbounded };

// Dense simplex tableau over [structural | artificial] columns. The last row
// holds reduced costs with the negated objective value in the rhs slot.
template <typename Scalar>
class Tableau {
 public:
  using S = Signs<Scalar>;

  explicit Tableau(const BasicLinearSystem<Scalar>& system)
      : rows_(system.n_rows()),
        structural_(system.n_vars()),
        width_(system.n_vars() + system.n_rows() + 1),
        cells_((rows_ + 1) * width_, Scalar(0)),
        basis_(rows_),
        row_sign_(rows_, 1) {
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto& row = system.row(r);
      row_sign_[r] = row.rhs < 0 ? -1 : 1;
      const Scalar sign(row_sign_[r]);
      for (std::size_t j = 0; j < structural_; ++j) at(r, j) = sign * row.coefficients[j];
      at(r, structural_ + r) = Scalar(1);
      rhs(r) = sign * row.rhs;
      basis_[r] = structural_ + r;
    }
    // Phase-1 cost: 1 on every artificial. Price out the initial basis.
    for (std::size_t j = 0; j <= width_ - 1; ++j) {
      if (j >= structural_ && j < width_ - 1) continue;
      Scalar sum(0);
      for (std::size_t r = 0; r < rows_; ++r) sum += at(r, j);
      at(rows_, j) = -sum;
    }
  }

  // Runs Bland's rule until optimal or unbounded. Only structural columns
  // may enter when `structural_only` is set.
  LpStatus optimize(bool structural_only) {
    const std::size_t candidates = structural_only ? structural_ : width_ - 1;
    for (;;) {
      std::size_t entering = candidates;
      for (std::size_t j = 0; j < candidates; ++j) {
        if (S::negative(at(rows_, j))) {
          entering = j;
          break;
        }
      }
      if (entering == candidates) return LpStatus::optimal;

      std::size_t leaving = rows_;
      Scalar best_ratio(0);
      for (std::size_t r = 0; r < rows_; ++r) {
        if (!S::positive(at(r, entering))) continue;
        Scalar ratio = rhs(r) / at(r, entering);
        if (leaving == rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == rows_) return LpStatus::unbounded;
      pivot(leaving, entering);
    }
  }

  // Replaces basic artificials (at level zero after a feasible phase 1) by
  // structural columns where possible. Rows without any structural entry are
  // redundant and keep their artificial.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < structural_) continue;
      for (std::size_t j = 0; j < structural_; ++j) {
        if (S::nonzero(at(r, j))) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  // Installs the reduced costs of min c^T x for the current basis.
  void set_structural_cost(const std::vector<Scalar>& cost) {
    for (std::size_t j = 0; j < width_; ++j) {
      Scalar d = j < structural_ ? cost[j] : Scalar(0);
      for (std::size_t r = 0; r < rows_; ++r) {
        const std::size_t b = basis_[r];
        if (b < structural_ && S::nonzero(cost[b])) d -= cost[b] * at(r, j);
      }
      at(rows_, j) = std::move(d);
    }
  }

  Scalar objective_value() const { return -at(rows_, width_ - 1); }

  std::vector<Scalar> primal() const {
    std::vector<Scalar> x(structural_, Scalar(0));
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < structural_) x[basis_[r]] = rhs(r);
    }
    return x;
  }

  // Phase-1 duals mapped back to the caller's row signs: y_i = 1 - d_{a_i}.
  std::vector<Scalar> farkas_multipliers() const {
    std::vector<Scalar> u(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      u[r] = Scalar(row_sign_[r]) * (Scalar(1) - at(rows_, structural_ + r));
    }
    return u;
  }

 private:
  Scalar& at(std::size_t r, std::size_t c) { return cells_[r * width_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return cells_[r * width_ + c]; }
  Scalar& rhs(std::size_t r) { return at(r, width_ - 1); }
  const Scalar& rhs(std::size_t r) const { return at(r, width_ - 1); }

  void pivot(std::size_t pr, std::size_t pc) {
    const Scalar inv = Scalar(1) / at(pr, pc);
    for (std::size_t j = 0; j < width_; ++j) {
      if (at(pr, j) != 0) at(pr, j) *= inv;
    }
    at(pr, pc) = Scalar(1);
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr || !S::nonzero(at(r, pc))) {
        if (r != pr) at(r, pc) = Scalar(0);
        continue;
      }
      const Scalar factor = at(r, pc);
      for (std::size_t j = 0; j < width_; ++j) {
        if (at(pr, j) != 0) at(r, j) -= factor * at(pr, j);
      }
      at(r, pc) = Scalar(0);
    }
    basis_[pr] = pc;
  }

  std::size_t rows_;
  std::size_t structural_;
  std::size_t width_;
  std::vector<Scalar> cells_;
  std::vector<std::size_t> basis_;
  std::vector<int> row_sign_;
};

void clean_floating(std::vector<Rational>&) {}
void clean_floating(std::vector<double>& x) {
  for (auto& v : x) {
    if (v < 0.0 && v >= -kNonnegativityTolerance) v = 0.0;
  }
}

template <typename Scalar>
Scalar dot_column(const BasicLinearSystem<Scalar>& system, std::span<const Scalar> u,
                  std::size_t column) {
  Scalar sum(0);
  for (std::size_t r = 0; r < system.n_rows(); ++r) {
    sum += u[r] * system.row(r).coefficients[column];
  }
  return sum;
}

bool at_most_zero(const Rational& v) { return sgn(v) <= 0; }
bool at_most_zero(double v) { return v <= kFeasibilityTolerance; }
bool strictly_positive(const Rational& v) { return sgn(v) > 0; }
bool strictly_positive(double v) { return v > kFeasibilityTolerance; }
bool residual_ok(const Rational& lhs, const Rational& rhs) { return lhs == rhs; }
bool residual_ok(double lhs, double rhs) { return std::abs(lhs - rhs) <= kFeasibilityTolerance; }
bool nonnegative(const Rational& v) { return sgn(v) >= 0; }
bool nonnegative(double v) { return v >= -kNonnegativityTolerance; }

}  // namespace

const char* to_string(Verdict verdict) {
  return verdict == Verdict::feasible ? "feasible" : "infeasible";
}

template <typename Scalar>
FeasibilityResult<Scalar> solve_feasibility(const BasicLinearSystem<Scalar>& system) {
  Tableau<Scalar> tableau(system);
  tableau.optimize(false);
  using Result = FeasibilityResult<Scalar>;
  if (Signs<Scalar>::infeasible_objective(tableau.objective_value())) {
    return Result(FarkasCertificate<Scalar>{tableau.farkas_multipliers()});
  }
  auto x = tableau.primal();
  clean_floating(x);
  return Result(FeasibleWitness<Scalar>{std::move(x)});
}

template <typename Scalar>
bool verify_certificate(const BasicLinearSystem<Scalar>& system,
                        std::type_identity_t<std::span<const Scalar>> u) {
  if (u.size() != system.n_rows()) {
    throw DimensionMismatch("certificate has " + std::to_string(u.size()) +
                            " entries, system has " + std::to_string(system.n_rows()) +
                            " rows");
  }
  for (std::size_t j = 0; j < system.n_vars(); ++j) {
    if (!at_most_zero(dot_column(system, u, j))) return false;
  }
  Scalar ub(0);
  for (std::size_t r = 0; r < system.n_rows(); ++r) ub += u[r] * system.row(r).rhs;
  return strictly_positive(ub);
}

template <typename Scalar>
bool satisfies(const BasicLinearSystem<Scalar>& system,
               std::type_identity_t<std::span<const Scalar>> x) {
  if (x.size() != system.n_vars()) {
    throw DimensionMismatch("assignment length differs from the variable count");
  }
  for (const auto& v : x) {
    if (!nonnegative(v)) return false;
  }
  for (const auto& row : system.rows()) {
    Scalar lhs(0);
    for (std::size_t j = 0; j < x.size(); ++j) lhs += row.coefficients[j] * x[j];
    if (!residual_ok(lhs, row.rhs)) return false;
  }
  return true;
}

template <typename Scalar>
std::optional<std::vector<Scalar>> unique_solution_if_any(
    const BasicLinearSystem<Scalar>& system) {
  Tableau<Scalar> feasible(system);
  feasible.optimize(false);
  if (Signs<Scalar>::infeasible_objective(feasible.objective_value())) {
    throw PreconditionFailed("uniqueness requested for an infeasible system");
  }
  feasible.drive_out_artificials();

  std::vector<Scalar> point = feasible.primal();
  clean_floating(point);
  std::vector<Scalar> cost(system.n_vars(), Scalar(0));
  for (std::size_t k = 0; k < system.n_vars(); ++k) {
    for (const int direction : {1, -1}) {
      Tableau<Scalar> lp = feasible;
      cost[k] = Scalar(direction);
      lp.set_structural_cost(cost);
      const LpStatus status = lp.optimize(true);
      cost[k] = Scalar(0);
      if (status == LpStatus::unbounded) return std::nullopt;
      const Scalar extreme = Scalar(direction) * lp.objective_value();
      if (!Signs<Scalar>::same_value(extreme, point[k])) return std::nullopt;
    }
  }
  return point;
}

template FeasibilityResult<Rational> solve_feasibility<Rational>(const ExactSystem&);
template FeasibilityResult<double> solve_feasibility<double>(const FloatSystem&);
template bool verify_certificate<Rational>(const ExactSystem&, std::span<const Rational>);
template bool verify_certificate<double>(const FloatSystem&, std::span<const double>);
template bool satisfies<Rational>(const ExactSystem&, std::span<const Rational>);
template bool satisfies<double>(const FloatSystem&, std::span<const double>);
template std::optional<std::vector<Rational>> unique_solution_if_any<Rational>(
    const ExactSystem&);
template std::optional<std::vector<double>> unique_solution_if_any<double>(const FloatSystem&);

}  // namespace steering
