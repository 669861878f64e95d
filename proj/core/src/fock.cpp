#include "collateral/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace collateral {

HilbertSpace::HilbertSpace(int n_max, int qubit_levels) : n_max_(n_max), qubit_levels_(qubit_levels) {
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
  if (qubit_levels < 1 || qubit_levels > 3)
    throw std::invalid_argument("qubit_levels must be 1, 2 or 3");
}

Eigen::Index HilbertSpace::dim() const {
  return static_cast<Eigen::Index>(modes()) * qubit_levels_ * modes();
}

Eigen::Index HilbertSpace::index(int n1, int q, int n2) const {
  if (n1 < 0 || n1 > n_max_ || n2 < 0 || n2 > n_max_ || q < 0 || q >= qubit_levels_)
    throw std::out_of_range(
        fmt::format("basis label |{},{},{}> outside space (n_max={}, levels={})", n1, q, n2,
                    n_max_, qubit_levels_));
  return (static_cast<Eigen::Index>(n1) * qubit_levels_ + q) * modes() + n2;
}

BasisLabel HilbertSpace::label(Eigen::Index index) const {
  if (index < 0 || index >= dim()) throw std::out_of_range("basis index outside space");
  const auto m = static_cast<Eigen::Index>(modes());
  BasisLabel l;
  l.n2 = static_cast<int>(index % m);
  const auto rest = index / m;
  l.q = static_cast<int>(rest % qubit_levels_);
  l.n1 = static_cast<int>(rest / qubit_levels_);
  return l;
}

// ---------------------------------------------------------------------------

Operator::Operator(HilbertSpace space, ComplexMatrix matrix)
    : space_(space), matrix_(std::move(matrix)) {
  if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim())
    throw std::invalid_argument("operator dimension does not match its Hilbert space");
}

Operator Operator::adjoint() const { return Operator(space_, matrix_.adjoint()); }

double Operator::max_abs() const { return matrix_.cwiseAbs().maxCoeff(); }

bool Operator::is_hermitian(double rel_tol) const {
  const double scale = std::max(max_abs(), 1e-300);
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

namespace {
void require_same(const HilbertSpace& a, const HilbertSpace& b) {
  if (!(a == b)) throw std::invalid_argument("operands live in different Hilbert spaces");
}
}  // namespace

Operator Operator::operator+(const Operator& rhs) const {
  require_same(space_, rhs.space_);
  return Operator(space_, matrix_ + rhs.matrix_);
}

Operator Operator::operator-(const Operator& rhs) const {
  require_same(space_, rhs.space_);
  return Operator(space_, matrix_ - rhs.matrix_);
}

Operator Operator::operator*(const Operator& rhs) const {
  require_same(space_, rhs.space_);
  return Operator(space_, matrix_ * rhs.matrix_);
}

Operator Operator::operator*(Complex s) const { return Operator(space_, matrix_ * s); }

StateVector Operator::operator*(const StateVector& psi) const {
  require_same(space_, psi.space());
  return StateVector(space_, matrix_ * psi.amplitudes());
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

// ---------------------------------------------------------------------------

StateVector::StateVector(HilbertSpace space, ComplexVector amplitudes)
    : space_(space), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != space_.dim())
    throw std::invalid_argument("state dimension does not match its Hilbert space");
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  return StateVector(space_, amplitudes_ / n);
}

Complex StateVector::amplitude(int n1, int q, int n2) const {
  return amplitudes_(space_.index(n1, q, n2));
}

Complex StateVector::inner(const StateVector& other) const {
  require_same(space_, other.space_);
  return amplitudes_.dot(other.amplitudes_);  // conjugates the left operand
}

StateVector StateVector::operator+(const StateVector& rhs) const {
  require_same(space_, rhs.space_);
  return StateVector(space_, amplitudes_ + rhs.amplitudes_);
}

StateVector StateVector::operator*(Complex s) const { return StateVector(space_, amplitudes_ * s); }

double overlap(const StateVector& a, const StateVector& b) { return std::norm(a.inner(b)); }

// ---------------------------------------------------------------------------

Operator identity(const HilbertSpace& space) {
  return Operator(space, ComplexMatrix::Identity(space.dim(), space.dim()));
}

namespace {

ComplexMatrix local_lowering(int levels) {
  ComplexMatrix a = ComplexMatrix::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

int local_dim(const HilbertSpace& s, Subsystem which) {
  return which == Subsystem::qubit ? s.qubit_levels() : s.modes();
}

}  // namespace

Operator embed(const HilbertSpace& space, Subsystem which, const ComplexMatrix& local) {
  if (local.rows() != local_dim(space, which) || local.cols() != local.rows())
    throw std::invalid_argument("local operator has the wrong dimension");
  const ComplexMatrix ir = ComplexMatrix::Identity(space.modes(), space.modes());
  const ComplexMatrix iq = ComplexMatrix::Identity(space.qubit_levels(), space.qubit_levels());
  switch (which) {
    case Subsystem::r1:
      return Operator(space, kron(kron(local, iq), ir));
    case Subsystem::qubit:
      return Operator(space, kron(kron(ir, local), ir));
    case Subsystem::r2:
      return Operator(space, kron(kron(ir, iq), local));
  }
  throw std::logic_error("unknown subsystem");
}

Operator annihilator(const HilbertSpace& space, Subsystem which) {
  return embed(space, which, local_lowering(local_dim(space, which)));
}

Operator creator(const HilbertSpace& space, Subsystem which) {
  return annihilator(space, which).adjoint();
}

Operator number_operator(const HilbertSpace& space, Subsystem which) {
  ComplexMatrix n = ComplexMatrix::Zero(local_dim(space, which), local_dim(space, which));
  for (Eigen::Index k = 0; k < n.rows(); ++k) n(k, k) = static_cast<double>(k);
  return embed(space, which, n);
}

StateVector basis_state(const HilbertSpace& space, int n1, int q, int n2) {
  ComplexVector v = ComplexVector::Zero(space.dim());
  v(space.index(n1, q, n2)) = 1.0;
  return StateVector(space, std::move(v));
}

Operator total_excitation_operator(const HilbertSpace& space) {
  return number_operator(space, Subsystem::r1) + number_operator(space, Subsystem::qubit) +
         number_operator(space, Subsystem::r2);
}

}  // namespace collateral
