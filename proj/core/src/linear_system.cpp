#include "steering/linear_system.hpp"

#include <cmath>
#include <string>

#include "steering/errors.hpp"

namespace steering {
namespace {

void check_finite(const Rational&) {}
void check_finite(double value) {
  if (!std::isfinite(value)) throw InvariantViolation("non-finite coefficient in linear system");
}

}  // namespace

template <typename Scalar>
void BasicLinearSystem<Scalar>::add_row(std::vector<Scalar> coefficients, Scalar rhs) {
  if (coefficients.size() != n_vars_) {
    throw DimensionMismatch("row has " + std::to_string(coefficients.size()) +
                            " coefficients, system has " + std::to_string(n_vars_) +
                            " variables");
  }
  for (const auto& c : coefficients) check_finite(c);
  check_finite(rhs);
  rows_.push_back({std::move(coefficients), std::move(rhs)});
}

template <typename Scalar>
void BasicLinearSystem<Scalar>::add_sparse_row(
    const std::vector<std::pair<std::size_t, Scalar>>& terms, Scalar rhs) {
  std::vector<Scalar> dense(n_vars_, Scalar(0));
  for (const auto& [index, value] : terms) {
    if (index >= n_vars_) throw DimensionMismatch("sparse row references an undeclared variable");
    dense[index] += value;
  }
  add_row(std::move(dense), std::move(rhs));
}

FloatSystem to_floating(const ExactSystem& system) {
  FloatSystem out(system.n_vars());
  for (const auto& row : system.rows()) {
    std::vector<double> coefficients;
    coefficients.reserve(row.coefficients.size());
    for (const auto& c : row.coefficients) coefficients.push_back(to_double(c));
    out.add_row(std::move(coefficients), to_double(row.rhs));
  }
  return out;
}

template class BasicLinearSystem<Rational>;
template class BasicLinearSystem<double>;

}  // namespace steering
