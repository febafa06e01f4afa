#pragma once

// Qubit algebra: pure states, orthogonal bases, ensembles, density operators
// and the maximally-entangled steering construction.

#include <array>
#include <complex>
#include <optional>
#include <vector>

namespace steering {

using Complex = std::complex<double>;

// Tolerance for construction invariants (normalization, hermiticity, ...).
inline constexpr double kConstructionTolerance = 1e-12;
// Tolerance for equalities derived from several arithmetic steps.
inline constexpr double kDerivedTolerance = 1e-10;

// Builds a complex amplitude, rejecting NaN and infinities.
Complex complex_amp(double re, double im);

// Dense 2x2 complex matrix, row-major.
class Matrix2 {
 public:
  constexpr Matrix2() = default;
  constexpr Matrix2(Complex a00, Complex a01, Complex a10, Complex a11)
      : entries_{a00, a01, a10, a11} {}

  static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Matrix2 diagonal(double d0, double d1) {
    return {d0, 0.0, 0.0, d1};
  }

  const Complex& operator()(int row, int col) const {
    return entries_[static_cast<std::size_t>(2 * row + col)];
  }
  Complex& operator()(int row, int col) {
    return entries_[static_cast<std::size_t>(2 * row + col)];
  }

  Complex trace() const { return entries_[0] + entries_[3]; }
  Matrix2 transpose() const;
  Matrix2 adjoint() const;

  // Largest absolute entry of (*this - other).
  double max_abs_diff(const Matrix2& other) const;
  bool is_hermitian(double tolerance) const;
  // Eigenvalues of the Hermitian part, ascending.
  std::array<double, 2> hermitian_eigenvalues() const;

  Matrix2& operator+=(const Matrix2& rhs);
  friend Matrix2 operator+(Matrix2 lhs, const Matrix2& rhs) { return lhs += rhs; }
  friend Matrix2 operator*(double s, Matrix2 m);
  friend Matrix2 operator*(const Matrix2& a, const Matrix2& b);
  friend bool operator==(const Matrix2&, const Matrix2&) = default;

 private:
  std::array<Complex, 4> entries_{};
};

// Unit vector in C^2, given by its amplitudes in the computational basis.
class PureState {
 public:
  // Throws InvariantViolation unless |c0|^2 + |c1|^2 = 1 within 1e-12.
  PureState(Complex c0, Complex c1);

  // Rescales (c0, c1) to unit norm; rejects the zero vector.
  static PureState normalized(Complex c0, Complex c1);
  // cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
  static PureState from_bloch(double theta, double phi = 0.0);
  static PureState zero() { return {1.0, 0.0}; }
  static PureState one() { return {0.0, 1.0}; }

  const Complex& c0() const { return c0_; }
  const Complex& c1() const { return c1_; }

  std::array<double, 3> bloch_vector() const;
  // |psi><psi|
  Matrix2 projector() const;
  // Complex conjugate of the amplitudes.
  PureState conjugate() const { return {std::conj(c0_), std::conj(c1_)}; }

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  Complex c0_;
  Complex c1_;
};

// |<a|b>|^2, clamped into [0, 1].
double overlap(const PureState& a, const PureState& b);

// The state orthogonal to `a` with phase convention (-conj(c1), conj(c0)).
PureState orthocomplement(const PureState& a);

// An orthonormal pair. `plus` is outcome 0, `minus` outcome 1.
class Basis {
 public:
  // Throws InvariantViolation unless |<plus|minus>|^2 <= 1e-24.
  Basis(PureState plus, PureState minus);
  static Basis from_state(const PureState& plus) {
    return {plus, orthocomplement(plus)};
  }

  const PureState& plus() const { return plus_; }
  const PureState& minus() const { return minus_; }
  const PureState& outcome(int index) const { return index == 0 ? plus_ : minus_; }

 private:
  PureState plus_;
  PureState minus_;
};

class Ensemble {
 public:
  struct Member {
    double weight;
    PureState state;
  };

  // Weights must lie in [0, 1] and sum to 1 within 1e-12.
  explicit Ensemble(std::vector<Member> members);

  // {(1/2, plus), (1/2, minus)}
  static Ensemble uniform(const Basis& basis);

  const std::vector<Member>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  std::vector<Member> members_;
};

class DensityMatrix {
 public:
  // Hermitian, unit trace and eigenvalues >= -1e-12, all to 1e-12.
  explicit DensityMatrix(const Matrix2& entries);

  static DensityMatrix maximally_mixed() {
    return DensityMatrix(Matrix2::diagonal(0.5, 0.5));
  }

  const Matrix2& entries() const { return entries_; }

 private:
  Matrix2 entries_;
};

class Povm {
 public:
  // Each element Hermitian PSD and the elements summing to I, all to 1e-12.
  explicit Povm(std::vector<Matrix2> elements);

  const std::vector<Matrix2>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

 private:
  std::vector<Matrix2> elements_;
};

DensityMatrix density_from_ensemble(const Ensemble& ensemble);

// True iff the ensemble average matches `rho` entrywise within 1e-10.
bool verify_steering_ensemble(const Ensemble& ensemble, const DensityMatrix& rho);

// Measurement on A that steers B into `ensemble` when the pair shares
// (|00> + |11>)/sqrt(2). Elements are 2 p_i (|phi_i><phi_i|)^T.
// Throws SteeringConditionViolated if the ensemble does not average to I/2.
Povm steering_povm(const Ensemble& ensemble);

struct ConditionalOutcome {
  double probability;
  // Empty for a zero-probability outcome.
  std::optional<DensityMatrix> state;
};

// Outcome probability and post-measurement state of B after the POVM element
// `element` fires on A of (|00> + |11>)/sqrt(2): Tr_A[(E (x) I) Phi] = E^T / 2.
ConditionalOutcome conditional_state(const Matrix2& element);

// The state whose Bloch vector bisects those of x and y. Its overlap with
// both equals (1 + sqrt(overlap(x, y))) / 2. Phase: c0 real, non-negative.
// Throws DegenerateScenario for identical or orthogonal inputs.
PureState bisecting_state(const PureState& x, const PureState& y);

}  // namespace steering
