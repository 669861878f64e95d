#include "collateral/idling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "collateral/constants.hpp"
#include "collateral/effective.hpp"
#include "collateral/errors.hpp"

namespace collateral {

namespace {

struct Sample {
  double coupling;
  double detuning;
};

Sample sample(const CircuitParams& params, double flux_phi0, const IdlingSearch& search) {
  DerivedParams dp = derive(params.with_flux(Flux::from_phi0(flux_phi0)));
  dp.kappa *= search.kappa_scale;
  const EffectiveParams ep = effective_params(dp, search.sign);
  return {ep.g_eff_ground, ep.detuning};
}

}  // namespace

double ground_coupling_at(const CircuitParams& params, double flux_phi0, const IdlingSearch& search) {
  return sample(params, flux_phi0, search).coupling;
}

double idling_flux_numeric(const CircuitParams& params, const IdlingSearch& search) {
  if (!(search.hi_phi0 > search.lo_phi0) || search.scan_points < 2)
    throw std::invalid_argument("invalid idling search bracket");

  std::optional<Sample> prev;
  double prev_flux = 0.0;
  const double step = (search.hi_phi0 - search.lo_phi0) / search.scan_points;
  for (int i = 0; i <= search.scan_points; ++i) {
    const double flux = search.lo_phi0 + step * i;
    std::optional<Sample> cur;
    try {
      cur = sample(params, flux, search);
    } catch (const DomainError&) {
      prev.reset();
      continue;
    }
    if (cur->coupling == 0.0) return flux;
    const bool same_delta_sign = prev && (prev->detuning > 0) == (cur->detuning > 0);
    if (prev && same_delta_sign && (prev->coupling > 0) != (cur->coupling > 0)) {
      auto f = [&](double x) { return ground_coupling_at(params, x, search); };
      auto tol = [&](double a, double b) { return std::abs(b - a) <= 1e-3 * search.tol_phi0; };
      const auto [a, b] = boost::math::tools::bisect(f, prev_flux, flux, tol);
      return 0.5 * (a + b);
    }
    prev = cur;
    prev_flux = flux;
  }
  throw NoIdlingPoint(fmt::format("no idling point in range [{}, {}] Phi0", search.lo_phi0,
                                  search.hi_phi0));
}

double idling_josephson_energy(const CircuitParams& p) {
  p.validate();
  if (p.c_q1 != p.c_q2 || p.c_r1 != p.c_r2 || p.l_r1 != p.l_r2)
    throw std::invalid_argument("closed-form idling flux needs a symmetric circuit");
  const double hbar = kSI.reduced_planck;
  const double ec = p.charging_energy();
  const double omega_r = 1.0 / std::sqrt(p.c_r1 * p.l_r1);
  const double eps = hbar * omega_r / 2.0;
  const double kappa = p.c_q1 * p.c_q2 / (p.c_total * p.c_r1) * eps / hbar;
  const double ct_cr = p.c_total * p.c_r1;

  const double sqrt_ej = 2.0 * kappa * ct_cr * (ec + hbar * omega_r) /
                         (std::sqrt(2.0 * ec) * (p.c_q1 * p.c_q1 * omega_r + 4.0 * kappa * ct_cr));
  return sqrt_ej * sqrt_ej;
}

double idling_flux_closed_form(const CircuitParams& p) {
  const double ej_star = idling_josephson_energy(p);
  const double ej_sum = p.e_j1 + p.e_j2;
  const double d = p.asymmetry();
  const double ratio = ej_star / ej_sum;
  if (ratio > 1.0)
    throw NoIdlingPoint("idling point unreachable for this E_J");
  // E_J~^2 = E_sum^2 (cos^2 x + d^2 sin^2 x)  =>  cos^2 x = (r^2 - d^2) / (1 - d^2)
  if (ratio < std::abs(d))
    throw NoIdlingPoint("idling point below the SQUID's minimum Josephson energy");
  const double cos2 = std::abs(d) < 1.0 ? (ratio * ratio - d * d) / (1.0 - d * d) : 1.0;
  return 2.0 * std::acos(std::sqrt(cos2));
}

std::vector<CouplingCurvePoint> effective_coupling_curve(const CircuitParams& params,
                                                         std::span<const double> flux_phi0,
                                                         CollateralSign sign) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  IdlingSearch with{.sign = sign};
  IdlingSearch without{.sign = sign, .kappa_scale = 0.0};
  std::vector<CouplingCurvePoint> out;
  out.reserve(flux_phi0.size());
  for (double x : flux_phi0) {
    CouplingCurvePoint pt{x, nan, nan};
    try {
      pt.g_eff_abs = std::abs(ground_coupling_at(params, x, with));
      pt.g_eff_abs_kappa0 = std::abs(ground_coupling_at(params, x, without));
    } catch (const DomainError&) {
    }
    out.push_back(pt);
  }
  return out;
}

std::string curve_to_csv(std::span<const CouplingCurvePoint> curve) {
  std::string out = "flux_over_phi0,g_eff_abs_hz,g_eff_abs_kappa0_hz\n";
  for (const auto& p : curve)
    out += fmt::format("{:.6f},{:.9e},{:.9e}\n", p.flux_phi0, angular_to_hz(p.g_eff_abs),
                       angular_to_hz(p.g_eff_abs_kappa0));
  return out;
}

}  // namespace collateral
