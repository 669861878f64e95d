#include "collateral/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "collateral/errors.hpp"

namespace collateral {

Propagator::Propagator(const Operator& hamiltonian) : space_(hamiltonian.space()) {
  if (!hamiltonian.is_hermitian(1e-9))
    throw std::invalid_argument("propagator requires a Hermitian Hamiltonian");
  // Hermitize exactly so round-off in the builders cannot leak into the norm.
  const ComplexMatrix h = 0.5 * (hamiltonian.matrix() + hamiltonian.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  energies_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

StateVector Propagator::apply(const StateVector& psi, double t) const {
  if (!(psi.space() == space_)) throw std::invalid_argument("state lives in a different space");
  ComplexVector c = eigenvectors_.adjoint() * psi.amplitudes();
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -energies_(k) * t);
  return StateVector(space_, eigenvectors_ * c);
}

StateVector propagate(const Operator& hamiltonian, const StateVector& psi0, double t) {
  if (t == 0.0) return psi0;
  return Propagator(hamiltonian).apply(psi0, t);
}

std::vector<double> population_trace(const Operator& hamiltonian, const StateVector& psi0,
                                     const StateVector& target, std::span<const double> times) {
  const Propagator u(hamiltonian);
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(overlap(target, u.apply(psi0, t)));
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) v[i] = lo + step * static_cast<double>(i);
  v.back() = hi;
  return v;
}

// ---------------------------------------------------------------------------

std::size_t TraceGrid::valid_columns() const {
  return static_cast<std::size_t>(
      std::count_if(column_errors.begin(), column_errors.end(), [](auto& e) { return e.empty(); }));
}

double TraceGrid::column_min(std::size_t j) const {
  if (!column_valid(j)) return std::numeric_limits<double>::quiet_NaN();
  return *std::min_element(populations[j].begin(), populations[j].end());
}

std::size_t TraceGrid::most_frozen_column() const {
  std::optional<std::size_t> best;
  double best_min = -1.0;
  for (std::size_t j = 0; j < cols(); ++j) {
    if (!column_valid(j)) continue;
    const double m = column_min(j);
    if (m > best_min) {
      best_min = m;
      best = j;
    }
  }
  if (!best) throw DomainError("no valid flux column in the sweep");
  return *best;
}

TraceGrid sweep_flux(const CircuitParams& params, std::span<const double> flux_phi0,
                     std::span<const double> times, const SweepOptions& options) {
  if (options.photons < 0) throw std::invalid_argument("photon number must be nonnegative");
  const int n_max = options.n_max >= 0 ? options.n_max : options.photons + 2;
  if (options.photons > n_max)
    throw TruncationError(fmt::format("N = {} exceeds truncation n_max = {}", options.photons, n_max));
  if (!std::is_sorted(times.begin(), times.end()) ||
      !std::is_sorted(flux_phi0.begin(), flux_phi0.end()))
    throw std::invalid_argument("time and flux grids must be sorted");

  const HilbertSpace space(n_max, options.variant == HamiltonianVariant::rwa ? 2 : 3);
  const StateVector psi0 = basis_state(space, options.photons, Level::g, 0);

  TraceGrid grid;
  grid.times.assign(times.begin(), times.end());
  grid.flux_phi0.assign(flux_phi0.begin(), flux_phi0.end());
  grid.populations.resize(flux_phi0.size());
  grid.column_errors.resize(flux_phi0.size());
  grid.photons = options.photons;
  grid.kappa_override = options.kappa_override;
  grid.sign = options.sign;
  grid.params = params;

  const HamiltonianOptions hopts{options.variant, options.sign, options.kappa_override};

  auto run_column = [&](std::size_t j) {
    try {
      const Operator h = hamiltonian_at_flux(space, params, Flux::from_phi0(flux_phi0[j]), hopts);
      grid.populations[j] = population_trace(h, psi0, psi0, times);
    } catch (const DomainError& e) {
      grid.column_errors[j] = e.what();
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(flux_phi0.size())));
  if (workers == 1) {
    for (std::size_t j = 0; j < flux_phi0.size(); ++j) run_column(j);
  } else {
    // Strided assignment; each column slot is written by exactly one worker.
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t j = w; j < flux_phi0.size(); j += workers) run_column(j);
      });
  }
  return grid;
}

std::string to_csv(const TraceGrid& grid) {
  std::string out = "time_s,flux_over_phi0,population\n";
  for (std::size_t j = 0; j < grid.cols(); ++j) {
    for (std::size_t i = 0; i < grid.rows(); ++i) {
      if (grid.column_valid(j))
        out += fmt::format("{:.9e},{:.6f},{:.12f}\n", grid.times[i], grid.flux_phi0[j],
                           grid.populations[j][i]);
      else
        out += fmt::format("{:.9e},{:.6f},nan\n", grid.times[i], grid.flux_phi0[j]);
    }
  }
  return out;
}

std::string to_json(const TraceGrid& grid, int indent) {
  nlohmann::json j;
  j["initial_state"] = fmt::format("|{}g0>", grid.photons);
  j["target_state"] = fmt::format("|{}g0>", grid.photons);
  j["photons"] = grid.photons;
  j["collateral_sign"] = grid.sign == CollateralSign::opposing ? "opposing" : "circuit";
  j["kappa_override_rad_s"] =
      grid.kappa_override ? nlohmann::json(*grid.kappa_override) : nlohmann::json(nullptr);
  j["params"] = {{"C_T_fF", grid.params.c_total / kFemto},
                 {"C_q1_fF", grid.params.c_q1 / kFemto},
                 {"C_q2_fF", grid.params.c_q2 / kFemto},
                 {"C_R1_fF", grid.params.c_r1 / kFemto},
                 {"C_R2_fF", grid.params.c_r2 / kFemto},
                 {"L_R1_nH", grid.params.l_r1 / kNano},
                 {"L_R2_nH", grid.params.l_r2 / kNano},
                 {"C_R1R2_fF", grid.params.c_r1r2 / kFemto},
                 {"E_J1_J", grid.params.e_j1},
                 {"E_J2_J", grid.params.e_j2}};
  j["times_s"] = grid.times;
  j["flux_over_phi0"] = grid.flux_phi0;
  nlohmann::json cols = nlohmann::json::array();
  for (std::size_t c = 0; c < grid.cols(); ++c)
    cols.push_back(grid.column_valid(c) ? nlohmann::json(grid.populations[c])
                                        : nlohmann::json(nullptr));
  j["populations"] = cols;
  j["column_errors"] = grid.column_errors;
  return j.dump(indent);
}

}  // namespace collateral
