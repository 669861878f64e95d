#pragma once

#include <optional>

#include "collateral/fock.hpp"
#include "collateral/params.hpp"

namespace collateral {

/// Relative sign of the collateral exchange term against the qubit-mediated
/// exchange.
///
/// `circuit` builds the resonator-resonator term exactly as the charge
/// Hamiltonian expands it: +kappa (a1^dag a2 + h.c.) next to g1 g2 > 0. In
/// that form the ground-manifold exchange is kappa - g1 g2 / Delta and has no
/// zero for a qubit below the resonators.
///
/// `opposing` flips the collateral term, giving a ground-manifold exchange of
/// -(kappa + g1 g2 / Delta) and an excited-manifold exchange of
/// -(kappa - g1 g2 / Delta). This is the convention under which the idling
/// point sits at Phi_ext/Phi0 ~ 1.01 for the qubit in |g>, and it is the
/// default everywhere in the library.
enum class CollateralSign : int { opposing = -1, circuit = +1 };

inline constexpr CollateralSign kDefaultCollateralSign = CollateralSign::opposing;

constexpr double sign_factor(CollateralSign s) { return static_cast<int>(s); }

/// Two-level Hamiltonian H / hbar (rad/s):
///   omega_q (s+s- + 1/2) + sum_k omega_Rk (a_k^dag a_k + 1/2)
///   + sum_k g_k (a_k^dag s- + a_k s+) + s kappa (a1^dag a2 + a1 a2^dag).
/// Requires space.qubit_levels() == 2.
Operator full_rwa(const HilbertSpace& space, const DerivedParams& dp,
                  CollateralSign sign = kDefaultCollateralSign);

/// Transmon Hamiltonian H / hbar keeping counter-rotating terms:
///   omega_q (b^dag b + 1/2) - (E_C / 2 hbar) b^dag b^dag b b + sum_k omega_Rk (a_k^dag a_k + 1/2)
///   + sum_k g_k (b - b^dag)(a_k^dag - a_k) - s kappa (a1^dag - a1)(a2^dag - a2).
/// `charging_energy` is in joule.
Operator full_transmon(const HilbertSpace& space, const DerivedParams& dp, double charging_energy,
                       CollateralSign sign = kDefaultCollateralSign);

enum class HamiltonianVariant { rwa, transmon };

struct HamiltonianOptions {
  HamiltonianVariant variant = HamiltonianVariant::rwa;
  CollateralSign sign = kDefaultCollateralSign;
  std::optional<double> kappa_override;  // rad/s; 0 removes the collateral term
};

/// derive() at the given flux followed by full_rwa or full_transmon.
/// Propagates DomainError from derive().
Operator hamiltonian_at_flux(const HilbertSpace& space, const CircuitParams& params, Flux flux,
                             const HamiltonianOptions& options = {});

}  // namespace collateral
