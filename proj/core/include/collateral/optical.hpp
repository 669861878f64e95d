#pragma once

#include <optional>

namespace collateral {

/// How a linewidth value should be read.
enum class RateUnit {
  angular,  // rad/s
  hertz,    // Gamma / 2 pi, in Hz
};

struct CavityParams {
  double mode_volume = 0.0;  // m^3
  double omega1 = 0.0;       // rad/s
  double omega2 = 0.0;
  double omega_atom = 0.0;
  double linewidth = 0.0;  // rad/s
  std::optional<double> dipole;  // C m

  /// Resonant atom and modes; `linewidth` is converted from `unit`.
  static CavityParams resonant(double volume, double omega, double linewidth, RateUnit unit);

  /// Throws std::invalid_argument for nonpositive inputs.
  void validate() const;
};

/// kappa_c = q^2 / (4 m eps0 V sqrt(w1 w2)) for a valence electron.
double kappa_c(const CavityParams& cp);

/// m eps0 sqrt(24 pi V c^3 Gamma) / q^2.
double g_over_kappa_c(const CavityParams& cp);

/// g = d sqrt(w_a / (2 eps0 hbar V)).
double atom_mode_coupling(const CavityParams& cp, double dipole);

/// Inverts Gamma = w_a^3 d^2 / (3 pi eps0 hbar c^3).
double dipole_from_linewidth(double omega_atom, double linewidth);
double linewidth_from_dipole(double omega_atom, double dipole);

struct OpticalReport {
  double kappa_c = 0.0;  // rad/s
  double ratio = 0.0;    // direct formula
  double dipole = 0.0;   // supplied, or derived from the linewidth
  double g = 0.0;        // rad/s
  double ratio_from_g = 0.0;
  /// |ratio_from_g / ratio - 1|
  double relative_mismatch = 0.0;
  bool consistent = false;  // mismatch below 1%
};

OpticalReport optical_report(const CavityParams& cp);

}  // namespace collateral
