#include "steering/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "steering/errors.hpp"

namespace steering {

Complex complex_amp(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw InvariantViolation("complex amplitude must be finite");
  }
  return {re, im};
}

Matrix2 Matrix2::transpose() const {
  return {entries_[0], entries_[2], entries_[1], entries_[3]};
}

Matrix2 Matrix2::adjoint() const {
  return {std::conj(entries_[0]), std::conj(entries_[2]), std::conj(entries_[1]),
          std::conj(entries_[3])};
}

double Matrix2::max_abs_diff(const Matrix2& other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
  }
  return worst;
}

bool Matrix2::is_hermitian(double tolerance) const {
  return max_abs_diff(adjoint()) <= tolerance;
}

std::array<double, 2> Matrix2::hermitian_eigenvalues() const {
  const double a = entries_[0].real();
  const double d = entries_[3].real();
  const Complex b = 0.5 * (entries_[1] + std::conj(entries_[2]));
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), std::abs(b));
  return {mean - radius, mean + radius};
}

Matrix2& Matrix2::operator+=(const Matrix2& rhs) {
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

Matrix2 operator*(double s, Matrix2 m) {
  for (auto& e : m.entries_) e *= s;
  return m;
}

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
  Matrix2 out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
    }
  }
  return out;
}

PureState::PureState(Complex c0, Complex c1) : c0_(c0), c1_(c1) {
  complex_amp(c0.real(), c0.imag());
  complex_amp(c1.real(), c1.imag());
  const double norm = std::norm(c0) + std::norm(c1);
  if (std::abs(norm - 1.0) > kConstructionTolerance) {
    throw InvariantViolation("pure state is not normalized: |c0|^2 + |c1|^2 = " +
                             std::to_string(norm));
  }
}

PureState PureState::normalized(Complex c0, Complex c1) {
  const double norm = std::sqrt(std::norm(c0) + std::norm(c1));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvariantViolation("cannot normalize a zero or non-finite vector");
  }
  return {c0 / norm, c1 / norm};
}

PureState PureState::from_bloch(double theta, double phi) {
  return {Complex(std::cos(0.5 * theta), 0.0), std::polar(std::sin(0.5 * theta), phi)};
}

std::array<double, 3> PureState::bloch_vector() const {
  const Complex cross = std::conj(c0_) * c1_;
  return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(c0_) - std::norm(c1_)};
}

Matrix2 PureState::projector() const {
  return {c0_ * std::conj(c0_), c0_ * std::conj(c1_), c1_ * std::conj(c0_),
          c1_ * std::conj(c1_)};
}

double overlap(const PureState& a, const PureState& b) {
  const Complex inner = std::conj(a.c0()) * b.c0() + std::conj(a.c1()) * b.c1();
  return std::clamp(std::norm(inner), 0.0, 1.0);
}

PureState orthocomplement(const PureState& a) {
  return {-std::conj(a.c1()), std::conj(a.c0())};
}

Basis::Basis(PureState plus, PureState minus) : plus_(plus), minus_(minus) {
  if (overlap(plus_, minus_) > 1e-24) {
    throw InvariantViolation("basis states are not orthogonal");
  }
}

Ensemble::Ensemble(std::vector<Member> members) : members_(std::move(members)) {
  if (members_.empty()) throw InvariantViolation("ensemble has no members");
  double total = 0.0;
  for (const auto& m : members_) {
    if (!(m.weight >= 0.0 && m.weight <= 1.0)) {
      throw InvariantViolation("ensemble weight outside [0, 1]");
    }
    total += m.weight;
  }
  if (std::abs(total - 1.0) > kConstructionTolerance) {
    throw InvariantViolation("ensemble weights sum to " + std::to_string(total));
  }
}

Ensemble Ensemble::uniform(const Basis& basis) {
  return Ensemble({{0.5, basis.plus()}, {0.5, basis.minus()}});
}

DensityMatrix::DensityMatrix(const Matrix2& entries) : entries_(entries) {
  if (!entries_.is_hermitian(kConstructionTolerance)) {
    throw InvariantViolation("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - 1.0) > kConstructionTolerance) {
    throw InvariantViolation("density matrix trace differs from 1");
  }
  if (entries_.hermitian_eigenvalues()[0] < -kConstructionTolerance) {
    throw InvariantViolation("density matrix has a negative eigenvalue");
  }
}

Povm::Povm(std::vector<Matrix2> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw InvariantViolation("POVM has no elements");
  Matrix2 sum;
  for (const auto& e : elements_) {
    if (!e.is_hermitian(kConstructionTolerance)) {
      throw InvariantViolation("POVM element is not Hermitian");
    }
    if (e.hermitian_eigenvalues()[0] < -kConstructionTolerance) {
      throw InvariantViolation("POVM element is not positive semidefinite");
    }
    sum += e;
  }
  if (sum.max_abs_diff(Matrix2::identity()) > kConstructionTolerance) {
    throw InvariantViolation("POVM elements do not sum to the identity");
  }
}

DensityMatrix density_from_ensemble(const Ensemble& ensemble) {
  Matrix2 rho;
  for (const auto& m : ensemble.members()) rho += m.weight * m.state.projector();
  return DensityMatrix(rho);
}

bool verify_steering_ensemble(const Ensemble& ensemble, const DensityMatrix& rho) {
  return density_from_ensemble(ensemble).entries().max_abs_diff(rho.entries()) <=
         kDerivedTolerance;
}

Povm steering_povm(const Ensemble& ensemble) {
  if (!verify_steering_ensemble(ensemble, DensityMatrix::maximally_mixed())) {
    throw SteeringConditionViolated(
        "ensemble does not average to I/2; a measurement on A can steer B into it "
        "if and only if the weighted projectors sum to the reduced state");
  }
  std::vector<Matrix2> elements;
  elements.reserve(ensemble.size());
  for (const auto& m : ensemble.members()) {
    elements.push_back((2.0 * m.weight) * m.state.projector().transpose());
  }
  return Povm(std::move(elements));
}

ConditionalOutcome conditional_state(const Matrix2& element) {
  if (!element.is_hermitian(kConstructionTolerance)) {
    throw PreconditionFailed("measurement element is not Hermitian");
  }
  const auto eig = element.hermitian_eigenvalues();
  if (eig[0] < -kConstructionTolerance || eig[1] > 1.0 + kConstructionTolerance) {
    throw PreconditionFailed("measurement element must satisfy 0 <= E <= I");
  }
  const Matrix2 transposed = element.transpose();
  const double trace = transposed.trace().real();
  if (trace <= kConstructionTolerance) return {0.0, std::nullopt};
  return {std::clamp(0.5 * trace, 0.0, 1.0), DensityMatrix((1.0 / trace) * transposed)};
}

PureState bisecting_state(const PureState& x, const PureState& y) {
  const double alpha = overlap(x, y);
  if (alpha <= kConstructionTolerance || alpha >= 1.0 - kConstructionTolerance) {
    throw DegenerateScenario("bisection needs states that are neither identical nor "
                             "orthogonal");
  }
  const auto rx = x.bloch_vector();
  const auto ry = y.bloch_vector();
  const std::array<double, 3> sum{rx[0] + ry[0], rx[1] + ry[1], rx[2] + ry[2]};
  const double norm = std::sqrt(sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]);
  const double cos_theta = std::clamp(sum[2] / norm, -1.0, 1.0);
  return PureState::from_bloch(std::acos(cos_theta), std::atan2(sum[1], sum[0]));
}

}  // namespace steering
