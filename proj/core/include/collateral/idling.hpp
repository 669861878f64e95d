#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "collateral/hamiltonians.hpp"
#include "collateral/params.hpp"

namespace collateral {

struct IdlingSearch {
  double lo_phi0 = 0.5;
  double hi_phi0 = 1.5;
  double tol_phi0 = 1e-6;
  int scan_points = 400;  // coarse scan used to bracket the first sign change
  CollateralSign sign = kDefaultCollateralSign;
  double kappa_scale = 1.0;  // multiplies kappa; 0 removes the collateral channel
};

/// Effective ground-state coupling at a flux, g_eff_ground(Phi) in rad/s.
/// Throws DomainError where derive() or the dispersive picture fails.
double ground_coupling_at(const CircuitParams& params, double flux_phi0,
                          const IdlingSearch& search = {});

/// Flux (in Phi0) where g_eff_ground vanishes, located by a coarse scan for the
/// first sign change followed by bisection. Sign changes across a pole
/// (Delta crossing zero) are skipped. Throws NoIdlingPoint if none is found.
double idling_flux_numeric(const CircuitParams& params, const IdlingSearch& search = {});

/// Closed form for a symmetric resonator pair (junctions may differ): solves kappa + g^2/Delta = 0 for
/// sqrt(E_J~),
///   sqrt(E_J~*) = 2 kappa C_T C_R (E_C + hbar w_R) / (sqrt(2 E_C) (C_q^2 w_R + 4 kappa C_T C_R)),
/// then inverts the SQUID tuning curve on the first lobe. Throws NoIdlingPoint
/// when E_J~* exceeds E_J1 + E_J2, std::invalid_argument when the two resonator branches differ.
double idling_flux_closed_form(const CircuitParams& params);

/// E_J~* from the closed form (joule).
double idling_josephson_energy(const CircuitParams& params);

struct CouplingCurvePoint {
  double flux_phi0 = 0.0;
  double g_eff_abs = 0.0;         // |g_eff_ground| with kappa, rad/s (NaN if undefined)
  double g_eff_abs_kappa0 = 0.0;  // same with kappa = 0
};

std::vector<CouplingCurvePoint> effective_coupling_curve(const CircuitParams& params,
                                                         std::span<const double> flux_phi0,
                                                         CollateralSign sign = kDefaultCollateralSign);

/// `flux_over_phi0,g_eff_abs_hz,g_eff_abs_kappa0_hz` (values divided by 2 pi).
std::string curve_to_csv(std::span<const CouplingCurvePoint> curve);

}  // namespace collateral
