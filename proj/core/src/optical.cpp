#include "collateral/optical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "collateral/constants.hpp"

namespace collateral {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

CavityParams CavityParams::resonant(double volume, double omega, double linewidth, RateUnit unit) {
  CavityParams cp;
  cp.mode_volume = volume;
  cp.omega1 = cp.omega2 = cp.omega_atom = omega;
  cp.linewidth = unit == RateUnit::hertz ? hz_to_angular(linewidth) : linewidth;
  return cp;
}

void CavityParams::validate() const {
  if (!(mode_volume > 0.0)) throw std::invalid_argument("mode volume must be positive");
  if (!(omega1 > 0.0 && omega2 > 0.0 && omega_atom > 0.0))
    throw std::invalid_argument("frequencies must be positive");
  if (!(linewidth > 0.0)) throw std::invalid_argument("linewidth must be positive");
  if (dipole && !(*dipole > 0.0)) throw std::invalid_argument("dipole moment must be positive");
}

double kappa_c(const CavityParams& cp) {
  cp.validate();
  const auto& k = kSI;
  return k.elementary_charge * k.elementary_charge / (4.0 * k.electron_mass * k.vacuum_permittivity * cp.mode_volume * std::sqrt(cp.omega1 * cp.omega2));
}

double g_over_kappa_c(const CavityParams& cp) {
  cp.validate();
  const auto& k = kSI;
  return k.electron_mass * k.vacuum_permittivity * std::sqrt(24.0 * pi * cp.mode_volume * std::pow(k.light_speed, 3) * cp.linewidth) /
         (k.elementary_charge * k.elementary_charge);
}

double atom_mode_coupling(const CavityParams& cp, double dipole) {
  return dipole * std::sqrt(cp.omega_atom / (2.0 * kSI.vacuum_permittivity * kSI.reduced_planck * cp.mode_volume));
}

double dipole_from_linewidth(double omega_atom, double linewidth) {
  const auto& k = kSI;
  return std::sqrt(3.0 * pi * k.vacuum_permittivity * k.reduced_planck * std::pow(k.light_speed, 3) * linewidth /
                   std::pow(omega_atom, 3));
}

double linewidth_from_dipole(double omega_atom, double dipole) {
  const auto& k = kSI;
  return std::pow(omega_atom, 3) * dipole * dipole / (3.0 * pi * k.vacuum_permittivity * k.reduced_planck * std::pow(k.light_speed, 3));
}

OpticalReport optical_report(const CavityParams& cp) {
  OpticalReport r;
  r.kappa_c = kappa_c(cp);
  r.ratio = g_over_kappa_c(cp);
  r.dipole = cp.dipole.value_or(dipole_from_linewidth(cp.omega_atom, cp.linewidth));
  r.g = atom_mode_coupling(cp, r.dipole);
  r.ratio_from_g = r.g / r.kappa_c;
  r.relative_mismatch = std::abs(r.ratio_from_g / r.ratio - 1.0);
  r.consistent = r.relative_mismatch < 0.01;
  return r;
}

}  // namespace collateral
