#include "collateral/noon.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "collateral/errors.hpp"
#include "collateral/evolve.hpp"
#include "collateral/idling.hpp"

namespace collateral {

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::swap_pulse: return "swap_pulse";
    case StepKind::pi_pulse: return "pi_pulse";
    case StepKind::half_pi_pulse: return "half_pi_pulse";
    case StepKind::idle_evolution: return "idle_evolution";
    case StepKind::measure: return "measure";
  }
  return "unknown";
}

namespace {

void require_two_level(const HilbertSpace& space) {
  if (space.qubit_levels() != 2)
    throw std::invalid_argument("the NOON protocol runs on the two-level qubit model");
}

void require_photons(const HilbertSpace& space, int photons) {
  if (photons < 0) throw std::invalid_argument("photon number must be nonnegative");
  if (photons > space.n_max())
    throw TruncationError(
        fmt::format("N = {} exceeds the Fock truncation n_max = {}", photons, space.n_max()));
}

double swap_time(double g1, int m) {
  return std::numbers::pi / (2.0 * std::abs(g1) * std::sqrt(static_cast<double>(m)));
}

}  // namespace

PreparedState prepare_fock(const HilbertSpace& space, const CircuitParams& params, int photons,
                           const NoonOptions& options) {
  require_two_level(space);
  require_photons(space, photons);

  DerivedParams dp = derive(params);
  const StateVector target = basis_state(space, photons, Level::g, 0);

  PreparedState out{target, 0.0, 1.0, {}};
  for (int m = 1; m <= photons; ++m) {
    const double tau = swap_time(dp.g1, m);
    out.duration_s += tau;
    out.steps.push_back({StepKind::pi_pulse, 0.0, params.phi_ext, fmt::format("photon {}", m)});
    out.steps.push_back({StepKind::swap_pulse, tau, params.phi_ext,
                         fmt::format("Q-R1 resonant swap, photon {}", m)});
  }
  if (options.prep == PrepMode::ideal) return out;

  // Resonance with R1 is imposed on the derived frequencies; R2 is pushed away.
  dp.omega_q = dp.omega_r1;
  dp.omega_r2 = dp.omega_r1 + options.r2_detuning_factor * std::abs(dp.g2);
  dp.detuning.reset();
  const Propagator swap(full_rwa(space, dp, options.sign));

  StateVector psi = basis_state(space, 0, Level::g, 0);
  for (int m = 1; m <= photons; ++m) psi = swap.apply(pi_pulse(psi), swap_time(dp.g1, m));
  out.overlap = overlap(target, psi);
  out.state = std::move(psi);
  return out;
}

StateVector half_pi_pulse(const StateVector& psi) {
  const HilbertSpace& space = psi.space();
  ComplexMatrix r = ComplexMatrix::Identity(space.qubit_levels(), space.qubit_levels());
  if (space.qubit_levels() < 2) throw std::invalid_argument("half-pi pulse needs a qubit");
  const double h = std::numbers::sqrt2 / 2.0;
  r(0, 0) = h;
  r(0, 1) = -h;
  r(1, 0) = h;
  r(1, 1) = h;
  return embed(space, Subsystem::qubit, r) * psi;
}

StateVector pi_pulse(const StateVector& psi) { return half_pi_pulse(half_pi_pulse(psi)); }

StateVector idle_evolve(const StateVector& psi, const CircuitParams& params, Flux flux, double tau,
                        CollateralSign sign) {
  require_two_level(psi.space());
  if (tau == 0.0) return psi;
  const Operator h = hamiltonian_at_flux(psi.space(), params, flux,
                                         {HamiltonianVariant::rwa, sign, std::nullopt});
  return propagate(h, psi, tau);
}

MeasurementBranches measure_qubit(const StateVector& psi) {
  const HilbertSpace& space = psi.space();
  auto branch = [&](int level, QubitState outcome) {
    ComplexVector v = ComplexVector::Zero(space.dim());
    for (int n1 = 0; n1 <= space.n_max(); ++n1)
      for (int n2 = 0; n2 <= space.n_max(); ++n2) {
        const auto i = space.index(n1, level, n2);
        v(i) = psi.amplitudes()(i);
      }
    ProtocolResult r;
    r.outcome = outcome;
    r.probability = v.squaredNorm();
    if (r.probability >= 1e-12) r.post_state = StateVector(space, v / std::sqrt(r.probability));
    return r;
  };
  return {branch(0, QubitState::ground), branch(1, QubitState::excited)};
}

double noon_fidelity(const StateVector& psi, int photons, QubitState qubit, double* theta) {
  if (photons < 1) throw std::invalid_argument("NOON fidelity needs N >= 1");
  const int q = qubit == QubitState::ground ? 0 : 1;
  const Complex a = psi.amplitude(photons, q, 0);
  const Complex b = psi.amplitude(0, q, photons);
  // |a + e^{-i theta} b|^2 / 2 is maximal when the phases line up.
  if (theta) *theta = std::arg(b) - std::arg(a);
  const double f = 0.5 * std::pow(std::abs(a) + std::abs(b), 2);
  return std::min(f, 1.0);
}

NoonRun run_protocol(const HilbertSpace& space, const CircuitParams& params, int photons,
                     const NoonOptions& options) {
  require_two_level(space);
  require_photons(space, photons);
  if (photons < 1) throw std::invalid_argument("NOON protocol needs N >= 1");

  IdlingSearch search = options.idling;
  search.sign = options.sign;
  const Flux idle = Flux::from_phi0(idling_flux_numeric(params, search));
  const EffectiveParams ep = effective_params(derive(params.with_flux(idle)), options.sign);

  NoonRun run;
  run.photons = photons;
  run.idling_flux = idle;
  run.tau2_s = std::numbers::pi / (2.0 * std::abs(ep.g_eff_excited));

  PreparedState prep = prepare_fock(space, params, photons, options);
  run.tau1_s = prep.duration_s;
  run.prep_overlap = prep.overlap;
  run.steps = std::move(prep.steps);

  StateVector psi = half_pi_pulse(prep.state);
  run.steps.push_back({StepKind::half_pi_pulse, 0.0, idle, "superpose qubit"});
  psi = idle_evolve(psi, params, idle, run.tau2_s, options.sign);
  run.steps.push_back({StepKind::idle_evolution, run.tau2_s, idle, "resonant resonators at idling flux"});
  psi = half_pi_pulse(psi);
  run.steps.push_back({StepKind::half_pi_pulse, 0.0, idle, "recombine"});
  run.branches = measure_qubit(psi);
  run.steps.push_back({StepKind::measure, 0.0, idle, "projective qubit readout"});

  for (ProtocolResult* r : {&run.branches.ground, &run.branches.excited}) {
    r->total_time_s = run.tau1_s + run.tau2_s;
    r->step_log = run.steps;
    if (!r->empty()) r->fidelity = noon_fidelity(*r->post_state, photons, r->outcome, &r->theta);
  }
  return run;
}

std::vector<ScanRow> fidelity_scan(const CircuitParams& base, std::span<const double> cq_over_cr,
                                   int max_photons, const NoonOptions& options, unsigned threads) {
  if (max_photons < 1) throw std::invalid_argument("max_photons must be at least 1");
  struct Cell {
    double ratio;
    int photons;
  };
  std::vector<Cell> cells;
  for (double r : cq_over_cr)
    for (int n = 1; n <= max_photons; ++n) cells.push_back({r, n});

  std::vector<ScanRow> rows(cells.size());
  auto run_cell = [&](std::size_t k) {
    const Cell& c = cells[k];
    CircuitParams p = base;
    p.c_q1 = c.ratio * p.c_r1;
    p.c_q2 = c.ratio * p.c_r2;
    const HilbertSpace space(options.n_max < 0 ? c.photons + 2 : options.n_max, 2);
    const NoonRun run = run_protocol(space, p, c.photons, options);
    rows[k] = {c.photons,
               c.ratio,
               run.branches.ground.fidelity,
               run.branches.excited.fidelity,
               run.branches.ground.probability,
               run.tau1_s,
               run.tau2_s,
               run.step_count()};
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));
  if (workers == 1) {
    for (std::size_t k = 0; k < cells.size(); ++k) run_cell(k);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          try {
            for (std::size_t k = w; k < cells.size(); k += workers) run_cell(k);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string scan_to_csv(std::span<const ScanRow> rows) {
  std::string out = "N,cq_over_cr,fidelity_g_branch,fidelity_e_branch,prob_g,tau1_s,tau2_s,steps\n";
  for (const auto& r : rows)
    out += fmt::format("{},{:.6f},{:.9f},{:.9f},{:.9f},{:.9e},{:.9e},{}\n", r.photons, r.cq_over_cr,
                       r.fidelity_g, r.fidelity_e, r.prob_g, r.tau1_s, r.tau2_s, r.steps);
  return out;
}

std::string step_log_json(const NoonRun& run, int indent) {
  nlohmann::json j;
  j["N"] = run.photons;
  j["idling_flux_over_phi0"] = run.idling_flux.in_phi0();
  j["tau1_s"] = run.tau1_s;
  j["tau2_s"] = run.tau2_s;
  j["prep_overlap"] = run.prep_overlap;
  j["step_count"] = run.step_count();
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : run.steps)
    steps.push_back({{"kind", to_string(s.kind)},
                     {"duration_s", s.duration_s},
                     {"flux_over_phi0", s.flux.in_phi0()},
                     {"note", s.note}});
  j["steps"] = steps;
  auto branch = [](const ProtocolResult& r) {
    return nlohmann::json{{"probability", r.probability},
                          {"fidelity", r.fidelity},
                          {"theta", r.theta},
                          {"empty", r.empty()}};
  };
  j["branches"] = {{"g", branch(run.branches.ground)}, {"e", branch(run.branches.excited)}};
  return j.dump(indent);
}

}  // namespace collateral
