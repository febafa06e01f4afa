#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "steering/rational.hpp"

namespace steering {

template <typename Scalar>
struct LinearRow {
  std::vector<Scalar> coefficients;
  Scalar rhs;

  friend bool operator==(const LinearRow&, const LinearRow&) = default;
};

// Equalities A x = b over implicitly non-negative variables x.
template <typename Scalar>
class BasicLinearSystem {
 public:
  using scalar_type = Scalar;

  explicit BasicLinearSystem(std::size_t n_vars) : n_vars_(n_vars) {}

  // Throws DimensionMismatch if the row length differs from n_vars, and
  // InvariantViolation for non-finite floating coefficients.
  void add_row(std::vector<Scalar> coefficients, Scalar rhs);
  // Adds a row given as (variable, coefficient) pairs; other entries are zero.
  void add_sparse_row(const std::vector<std::pair<std::size_t, Scalar>>& terms, Scalar rhs);

  std::size_t n_vars() const { return n_vars_; }
  std::size_t n_rows() const { return rows_.size(); }
  const std::vector<LinearRow<Scalar>>& rows() const { return rows_; }
  const LinearRow<Scalar>& row(std::size_t i) const { return rows_[i]; }

  friend bool operator==(const BasicLinearSystem&, const BasicLinearSystem&) = default;

 private:
  std::size_t n_vars_;
  std::vector<LinearRow<Scalar>> rows_;
};

using ExactSystem = BasicLinearSystem<Rational>;
using FloatSystem = BasicLinearSystem<double>;

FloatSystem to_floating(const ExactSystem& system);

extern template class BasicLinearSystem<Rational>;
extern template class BasicLinearSystem<double>;

}  // namespace steering
