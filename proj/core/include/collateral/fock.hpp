#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace collateral {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

enum class Subsystem { r1, qubit, r2 };

/// Qubit level labels; index 2 is the second transmon excitation.
enum class Level : int { g = 0, e = 1, f = 2 };

struct BasisLabel {
  int n1 = 0;
  int q = 0;
  int n2 = 0;
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Truncated Fock space R1 (x) Q (x) R2.
///
/// Resonators keep |0>..|n_max>. The qubit has 2 levels (two-level
/// model), 3 (transmon with anharmonicity) or 1 (qubit traced out, used by the
/// effective two-resonator model). Basis index is row-major over (n1, q, n2):
///
///     index = (n1 * qubit_levels + q) * (n_max + 1) + n2
class HilbertSpace {
 public:
  HilbertSpace(int n_max, int qubit_levels);

  int n_max() const { return n_max_; }
  int qubit_levels() const { return qubit_levels_; }
  int modes() const { return n_max_ + 1; }
  Eigen::Index dim() const;

  Eigen::Index index(int n1, int q, int n2) const;
  BasisLabel label(Eigen::Index index) const;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  int n_max_;
  int qubit_levels_;
};

class StateVector;

/// Dense operator bound to a HilbertSpace.
class Operator {
 public:
  Operator(HilbertSpace space, ComplexMatrix matrix);

  const HilbertSpace& space() const { return space_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  Operator adjoint() const;
  bool is_hermitian(double rel_tol = 1e-12) const;
  /// Largest absolute entry; used to scale tolerances.
  double max_abs() const;

  Operator operator+(const Operator& rhs) const;
  Operator operator-(const Operator& rhs) const;
  Operator operator*(const Operator& rhs) const;
  Operator operator*(Complex s) const;
  friend Operator operator*(Complex s, const Operator& op) { return op * s; }
  StateVector operator*(const StateVector& psi) const;

 private:
  HilbertSpace space_;
  ComplexMatrix matrix_;
};

Operator commutator(const Operator& a, const Operator& b);

class StateVector {
 public:
  StateVector(HilbertSpace space, ComplexVector amplitudes);

  const HilbertSpace& space() const { return space_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }

  double norm() const { return amplitudes_.norm(); }
  StateVector normalized() const;
  Complex amplitude(int n1, int q, int n2) const;
  /// <this|other>
  Complex inner(const StateVector& other) const;

  StateVector operator+(const StateVector& rhs) const;
  StateVector operator*(Complex s) const;

 private:
  HilbertSpace space_;
  ComplexVector amplitudes_;
};

/// |<a|b>|^2
double overlap(const StateVector& a, const StateVector& b);

Operator identity(const HilbertSpace& space);

/// Truncated lowering operator of one subsystem, embedded by Kronecker
/// products. For a 2-level qubit this is sigma^-.
Operator annihilator(const HilbertSpace& space, Subsystem which);
Operator creator(const HilbertSpace& space, Subsystem which);
Operator number_operator(const HilbertSpace& space, Subsystem which);

/// Embeds a single-subsystem matrix into the composite space.
Operator embed(const HilbertSpace& space, Subsystem which, const ComplexMatrix& local);

/// Throws std::out_of_range for labels outside the space.
StateVector basis_state(const HilbertSpace& space, int n1, int q, int n2);
inline StateVector basis_state(const HilbertSpace& space, int n1, Level q, int n2) {
  return basis_state(space, n1, static_cast<int>(q), n2);
}

/// N = b^dag b + a1^dag a1 + a2^dag a2.
Operator total_excitation_operator(const HilbertSpace& space);

}  // namespace collateral
