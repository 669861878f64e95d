#include "collateral/hamiltonians.hpp"

#include <stdexcept>

#include "collateral/constants.hpp"

namespace collateral {

namespace {

struct Ladder {
  Operator a1, a1d, a2, a2d, b, bd, id;
};

Ladder ladder(const HilbertSpace& space) {
  return {annihilator(space, Subsystem::r1), creator(space, Subsystem::r1),
          annihilator(space, Subsystem::r2), creator(space, Subsystem::r2),
          annihilator(space, Subsystem::qubit), creator(space, Subsystem::qubit),
          identity(space)};
}

}  // namespace

Operator full_rwa(const HilbertSpace& space, const DerivedParams& dp, CollateralSign sign) {
  if (space.qubit_levels() != 2)
    throw std::invalid_argument("full_rwa requires a two-level qubit");
  const Ladder l = ladder(space);
  const double s = sign_factor(sign);

  Operator h = (l.bd * l.b + l.id * 0.5) * dp.omega_q;
  h = h + (l.a1d * l.a1 + l.id * 0.5) * dp.omega_r1;
  h = h + (l.a2d * l.a2 + l.id * 0.5) * dp.omega_r2;
  h = h + (l.a1d * l.b + l.a1 * l.bd) * dp.g1;
  h = h + (l.a2d * l.b + l.a2 * l.bd) * dp.g2;
  h = h + (l.a1d * l.a2 + l.a1 * l.a2d) * (s * dp.kappa);
  return h;
}

Operator full_transmon(const HilbertSpace& space, const DerivedParams& dp, double charging_energy,
                       CollateralSign sign) {
  if (space.qubit_levels() < 2)
    throw std::invalid_argument("full_transmon requires at least two qubit levels");
  const Ladder l = ladder(space);
  const double s = sign_factor(sign);
  const double anharm = charging_energy / (2.0 * kSI.reduced_planck);

  Operator h = (l.bd * l.b + l.id * 0.5) * dp.omega_q;
  h = h - (l.bd * l.bd * l.b * l.b) * anharm;
  h = h + (l.a1d * l.a1 + l.id * 0.5) * dp.omega_r1;
  h = h + (l.a2d * l.a2 + l.id * 0.5) * dp.omega_r2;
  h = h + ((l.b - l.bd) * (l.a1d - l.a1)) * dp.g1;
  h = h + ((l.b - l.bd) * (l.a2d - l.a2)) * dp.g2;
  h = h - ((l.a1d - l.a1) * (l.a2d - l.a2)) * (s * dp.kappa);
  return h;
}

Operator hamiltonian_at_flux(const HilbertSpace& space, const CircuitParams& params, Flux flux,
                             const HamiltonianOptions& options) {
  const CircuitParams at = params.with_flux(flux);
  DerivedParams dp = derive(at);
  if (options.kappa_override) dp.kappa = *options.kappa_override;
  switch (options.variant) {
    case HamiltonianVariant::rwa:
      return full_rwa(space, dp, options.sign);
    case HamiltonianVariant::transmon:
      return full_transmon(space, dp, dp.charging_energy, options.sign);
  }
  throw std::logic_error("unknown Hamiltonian variant");
}

}  // namespace collateral
