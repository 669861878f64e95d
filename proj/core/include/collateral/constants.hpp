#pragma once

#include <numbers>

namespace collateral {

/// SI physical constants (CODATA 2018; e and hbar are exact by definition).
struct PhysicalConstants {
  double elementary_charge = 1.602176634e-19;   // C
  double reduced_planck = 1.054571817e-34;      // J s
  double vacuum_permittivity = 8.8541878128e-12; // F/m
  double light_speed = 299792458.0;              // m/s
  double electron_mass = 9.1093837015e-31;       // kg

  /// Reduced flux quantum hbar / 2e. Junction phases are Phi / Phi0 in radians.
  constexpr double flux_quantum() const { return reduced_planck / (2.0 * elementary_charge); }
};

inline constexpr PhysicalConstants kSI{};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Display-unit helpers. Library internals are strict SI.
inline constexpr double kFemto = 1e-15;
inline constexpr double kNano = 1e-9;

constexpr double angular_to_hz(double omega) { return omega / kTwoPi; }
constexpr double hz_to_angular(double f) { return f * kTwoPi; }

}  // namespace collateral
