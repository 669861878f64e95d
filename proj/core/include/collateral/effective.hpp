#pragma once

#include "collateral/fock.hpp"
#include "collateral/hamiltonians.hpp"
#include "collateral/params.hpp"

namespace collateral {

enum class QubitState { ground, excited };

/// Dispersive (|Delta| >> g) description with the qubit frozen in |g> or |e>.
///
/// The two couplings are quoted relative to the collateral sign s of the
/// underlying full model:
///   g_eff_ground  = kappa - s g1 g2 / Delta
///   g_eff_excited = kappa + s g1 g2 / Delta
/// so that g_eff_ground + g_eff_excited = 2 kappa for either convention. The
/// matrix element that actually appears in H_eff is s * g_eff.
struct EffectiveParams {
  double eta1 = 0.0;  // g1^2 / Delta
  double eta2 = 0.0;  // g2^2 / Delta
  double g_eff_ground = 0.0;
  double g_eff_excited = 0.0;
  double detuning = 0.0;
  double kappa = 0.0;
  CollateralSign sign = kDefaultCollateralSign;

  double coupling(QubitState q) const {
    return q == QubitState::ground ? g_eff_ground : g_eff_excited;
  }
};

/// Throws DomainError when Delta = 0 or the resonators are not degenerate.
EffectiveParams effective_params(const DerivedParams& dp,
                                 CollateralSign sign = kDefaultCollateralSign);

/// |Delta| >= factor * max(|g1|, |g2|).
bool dispersive_regime(const DerivedParams& dp, double factor = 10.0);

/// Two-resonator Hamiltonian (rad/s, resonator frame) with the qubit traced out:
///   -/+ sum_n eta_n a_n^dag a_n + s g_eff(q) (a1 a2^dag + a1^dag a2).
/// The dispersive shift takes - for |g> and + for |e>. `space` must have
/// qubit_levels() == 1.
Operator effective_hamiltonian(const HilbertSpace& space, const EffectiveParams& ep,
                               QubitState qubit);

}  // namespace collateral
