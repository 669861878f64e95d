#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "collateral/fock.hpp"
#include "collateral/hamiltonians.hpp"
#include "collateral/params.hpp"

namespace collateral {

/// exp(-i H t) for a time-independent Hermitian H (rad/s), via one
/// eigendecomposition reused for every time.
class Propagator {
 public:
  /// Throws std::invalid_argument when H is not Hermitian to 1e-9 relative.
  explicit Propagator(const Operator& hamiltonian);

  StateVector apply(const StateVector& psi, double t) const;
  const Eigen::VectorXd& energies() const { return energies_; }

 private:
  HilbertSpace space_;
  Eigen::VectorXd energies_;
  ComplexMatrix eigenvectors_;
};

StateVector propagate(const Operator& hamiltonian, const StateVector& psi0, double t);

/// |<target|psi(t)>|^2 at each time.
std::vector<double> population_trace(const Operator& hamiltonian, const StateVector& psi0,
                                     const StateVector& target, std::span<const double> times);

/// Evenly spaced grid, both ends included.
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// Population P(t, Phi) = |<N g 0|psi(t)>|^2 from psi(0) = |N g 0>.
struct TraceGrid {
  std::vector<double> times;        // s
  std::vector<double> flux_phi0;    // Phi_ext / Phi0
  // populations[j][i] is flux column j at time i; empty when the column is invalid
  std::vector<std::vector<double>> populations;
  std::vector<std::string> column_errors;  // "" for valid columns

  int photons = 1;
  std::optional<double> kappa_override;
  CollateralSign sign = kDefaultCollateralSign;
  CircuitParams params;

  std::size_t rows() const { return times.size(); }
  std::size_t cols() const { return flux_phi0.size(); }
  bool column_valid(std::size_t j) const { return column_errors[j].empty(); }
  std::size_t valid_columns() const;

  /// min_t P(t) of a column (NaN if invalid).
  double column_min(std::size_t j) const;
  /// Index of the column with the largest min_t P(t). Throws if none valid.
  std::size_t most_frozen_column() const;
};

struct SweepOptions {
  int photons = 1;
  int n_max = -1;  // defaults to photons + 2
  std::optional<double> kappa_override;
  HamiltonianVariant variant = HamiltonianVariant::rwa;
  CollateralSign sign = kDefaultCollateralSign;
  unsigned threads = 1;
};

/// Flux columns are independent; each runs its own eigendecomposition.
/// Flux points where derive() fails are kept as invalid columns.
TraceGrid sweep_flux(const CircuitParams& params, std::span<const double> flux_phi0,
                     std::span<const double> times, const SweepOptions& options = {});

/// Columns `time_s,flux_over_phi0,population`, one row per cell, header first.
std::string to_csv(const TraceGrid& grid);
/// JSON document with metadata and the population matrix.
std::string to_json(const TraceGrid& grid, int indent = -1);

}  // namespace collateral
