#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "collateral/effective.hpp"
#include "collateral/fock.hpp"
#include "collateral/hamiltonians.hpp"
#include "collateral/idling.hpp"
#include "collateral/params.hpp"

namespace collateral {

enum class StepKind { swap_pulse, pi_pulse, half_pi_pulse, idle_evolution, measure };

const char* to_string(StepKind kind);

struct ProtocolStep {
  StepKind kind = StepKind::measure;
  double duration_s = 0.0;  // 0 for instantaneous pulses
  Flux flux{};
  std::string note;
};

enum class PrepMode { ideal, simulated };

struct NoonOptions {
  PrepMode prep = PrepMode::ideal;
  CollateralSign sign = kDefaultCollateralSign;
  /// R2 is detuned by this many |g2| during simulated preparation.
  double r2_detuning_factor = 20.0;
  IdlingSearch idling{};
  /// Fock cutoff for fidelity_scan; -1 means N + 2.
  int n_max = -1;
};

struct PreparedState {
  StateVector state;
  double duration_s = 0.0;
  double overlap = 1.0;  // |<N g 0|state>|^2
  std::vector<ProtocolStep> steps;
};

/// Loads N photons into R1, one per cycle: a qubit pi pulse followed by a
/// resonant Q-R1 swap lasting pi / (2 |g1| sqrt(m)) for the m-th photon.
/// `ideal` returns |N g 0> exactly; `simulated` evolves every swap under the
/// full two-level Hamiltonian with omega_q set to omega_R1 and R2 detuned.
/// Throws TruncationError if N > n_max.
PreparedState prepare_fock(const HilbertSpace& space, const CircuitParams& params, int photons,
                           const NoonOptions& options = {});

/// Instantaneous qubit rotation |g> -> (|g> + |e>)/sqrt2, |e> -> (-|g> + |e>)/sqrt2
/// on the lowest two levels (identity on |f>).
StateVector half_pi_pulse(const StateVector& psi);

/// Two half-pi pulses: |g> -> |e>, |e> -> -|g>.
StateVector pi_pulse(const StateVector& psi);

/// Evolution for `tau` seconds under the full two-level Hamiltonian at `flux`.
StateVector idle_evolve(const StateVector& psi, const CircuitParams& params, Flux flux, double tau,
                        CollateralSign sign = kDefaultCollateralSign);

struct ProtocolResult {
  QubitState outcome = QubitState::ground;
  std::optional<StateVector> post_state;  // empty when the branch probability < 1e-12
  double probability = 0.0;
  double fidelity = 0.0;
  double theta = 0.0;
  double total_time_s = 0.0;
  std::vector<ProtocolStep> step_log;

  bool empty() const { return !post_state.has_value(); }
};

struct MeasurementBranches {
  ProtocolResult ground;
  ProtocolResult excited;
};

/// Projective qubit measurement {1 (x) |g><g| (x) 1, 1 (x) |e><e| (x) 1} with
/// renormalized post-measurement states. Fidelity fields are left at zero.
MeasurementBranches measure_qubit(const StateVector& psi);

/// max over theta of |<NOON(theta)|psi>|^2 with
/// |NOON(theta)> = (|N q 0> + e^{i theta} |0 q N>) / sqrt2. Writes the
/// maximizing theta when requested.
double noon_fidelity(const StateVector& psi, int photons, QubitState qubit,
                     double* theta = nullptr);

struct NoonRun {
  MeasurementBranches branches;
  int photons = 0;
  Flux idling_flux{};
  double tau1_s = 0.0;
  double tau2_s = 0.0;
  double prep_overlap = 1.0;
  std::vector<ProtocolStep> steps;

  int step_count() const { return static_cast<int>(steps.size()); }
};

/// prepare -> half-pi -> idle for tau2 at the idling flux -> half-pi -> measure.
/// tau2 = pi / (2 |g_eff_excited|) evaluated at the idling flux.
NoonRun run_protocol(const HilbertSpace& space, const CircuitParams& params, int photons,
                     const NoonOptions& options = {});

struct ScanRow {
  int photons = 0;
  double cq_over_cr = 0.0;
  double fidelity_g = 0.0;
  double fidelity_e = 0.0;
  double prob_g = 0.0;
  double tau1_s = 0.0;
  double tau2_s = 0.0;
  int steps = 0;
};

/// One protocol run per (ratio, N) with C_qk = ratio * C_Rk.
/// Rows are ordered by ratio, then N, regardless of `threads`.
std::vector<ScanRow> fidelity_scan(const CircuitParams& base, std::span<const double> cq_over_cr,
                                   int max_photons, const NoonOptions& options = {},
                                   unsigned threads = 1);

/// `N,cq_over_cr,fidelity_g_branch,fidelity_e_branch,prob_g,tau1_s,tau2_s,steps`
std::string scan_to_csv(std::span<const ScanRow> rows);

std::string step_log_json(const NoonRun& run, int indent = 2);

}  // namespace collateral
