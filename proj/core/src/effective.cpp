#include "collateral/effective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "collateral/errors.hpp"

namespace collateral {

EffectiveParams effective_params(const DerivedParams& dp, CollateralSign sign) {
  if (!dp.detuning) throw DomainError("dispersive regime needs degenerate resonators");
  const double delta = *dp.detuning;
  if (delta == 0.0) throw DomainError("dispersive regime undefined on resonance");

  const double s = sign_factor(sign);
  const double mediated = dp.g1 * dp.g2 / delta;
  EffectiveParams ep;
  ep.detuning = delta;
  ep.kappa = dp.kappa;
  ep.sign = sign;
  ep.eta1 = dp.g1 * dp.g1 / delta;
  ep.eta2 = dp.g2 * dp.g2 / delta;
  ep.g_eff_ground = dp.kappa - s * mediated;
  ep.g_eff_excited = dp.kappa + s * mediated;
  return ep;
}

bool dispersive_regime(const DerivedParams& dp, double factor) {
  if (!dp.detuning) return false;
  return std::abs(*dp.detuning) >= factor * std::max(std::abs(dp.g1), std::abs(dp.g2));
}

Operator effective_hamiltonian(const HilbertSpace& space, const EffectiveParams& ep,
                               QubitState qubit) {
  if (space.qubit_levels() != 1)
    throw std::invalid_argument("effective_hamiltonian expects the two-resonator space");
  const Operator a1 = annihilator(space, Subsystem::r1);
  const Operator a2 = annihilator(space, Subsystem::r2);
  const Operator a1d = a1.adjoint();
  const Operator a2d = a2.adjoint();
  const double shift = qubit == QubitState::ground ? -1.0 : 1.0;
  const double s = sign_factor(ep.sign);

  return (a1d * a1) * (shift * ep.eta1) + (a2d * a2) * (shift * ep.eta2) +
         (a1 * a2d + a1d * a2) * (s * ep.coupling(qubit));
}

}  // namespace collateral
