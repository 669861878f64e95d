#pragma once

#include "collateral/constants.hpp"

namespace collateral {

/// External flux threading the transmon SQUID loop.
///
/// Stored in weber; most callers think in units of the reduced flux quantum
/// Phi0 = hbar / 2e, so the junction phase is Phi / (2 Phi0).
class Flux {
 public:
  constexpr Flux() = default;

  static constexpr Flux from_weber(double wb) { return Flux(wb); }
  static constexpr Flux from_phi0(double x) { return Flux(x * kSI.flux_quantum()); }

  constexpr double weber() const { return weber_; }
  constexpr double in_phi0() const { return weber_ / kSI.flux_quantum(); }

  friend constexpr bool operator==(Flux, Flux) = default;

 private:
  constexpr explicit Flux(double wb) : weber_(wb) {}
  double weber_ = 0.0;
};

}  // namespace collateral
