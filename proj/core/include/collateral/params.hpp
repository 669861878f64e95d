#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "collateral/flux.hpp"

namespace collateral {

/// Lumped-element description of the resonator-transmon-resonator circuit.
/// All fields are SI: farad, henry, joule.
struct CircuitParams {
  double c_total = 0.0;  // qubit box capacitance C_J + C_B
  double c_q1 = 0.0;     // qubit - R1 coupling capacitance
  double c_q2 = 0.0;     // qubit - R2 coupling capacitance
  double c_r1 = 0.0;
  double c_r2 = 0.0;
  double l_r1 = 0.0;
  double l_r2 = 0.0;
  double e_j1 = 0.0;     // Josephson energies of the two SQUID junctions
  double e_j2 = 0.0;
  double c_r1r2 = 0.0;   // direct (parasitic) resonator-resonator capacitance
  Flux phi_ext{};

  /// Junction asymmetry d = (E_J1 - E_J2) / (E_J1 + E_J2).
  double asymmetry() const;

  /// E_C = e^2 / (2 C_T).
  double charging_energy() const;

  /// Throws std::invalid_argument on nonpositive C_T, C_Rk, L_Rk, negative
  /// coupling capacitances or junction energies.
  void validate() const;

  CircuitParams with_flux(Flux f) const {
    CircuitParams p = *this;
    p.phi_ext = f;
    return p;
  }

  /// Reference circuit: C_Rk = 4 C_T = 400 fF, L_Rk = 0.8 nH,
  /// C_qk = C_Rk / cq_divisor, E_J = ej_over_ec * E_C per junction, d = 0.
  static CircuitParams reference(double cq_divisor = 50.0, double ej_over_ec = 70.0);

  friend bool operator==(const CircuitParams&, const CircuitParams&) = default;
};

/// Quantities derived from a CircuitParams. Frequencies are angular (rad/s),
/// energies in joule. g1, g2 carry the (negative) sign of the coupling formula.
struct DerivedParams {
  double charging_energy = 0.0;
  double josephson_energy = 0.0;  // flux-tuned, always >= 0
  double omega_q = 0.0;
  double omega_r1 = 0.0;
  double omega_r2 = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double kappa = 0.0;
  double zero_point_r1 = 0.0;
  double zero_point_r2 = 0.0;
  std::optional<double> detuning;  // omega_q - omega_R, only when omega_R1 == omega_R2
};

struct ValidityReport {
  bool dispersive = true;       // |Delta| >= factor * max|g_k|
  bool rotating_wave = true;    // min(omega_q, omega_Rk) >= factor * max(|g_k|, kappa)
  bool small_coupling = true;   // C_T, C_Rk >= factor * C_qk
  std::vector<std::string> warnings;
};

/// Flux-tuned Josephson energy of an asymmetric SQUID,
/// (E_J1 + E_J2) |cos x| sqrt(1 + d^2 tan^2 x) with x = Phi_ext / 2 Phi0,
/// evaluated in the equivalent form (E_J1 + E_J2) sqrt(cos^2 x + d^2 sin^2 x).
double josephson_energy(const CircuitParams& params);

/// Frequencies and couplings. Throws DomainError when the qubit frequency
/// sqrt(8 E_C E_J~) - E_C is not positive.
DerivedParams derive(const CircuitParams& params);

/// Maxwell capacitance matrix over the node fluxes (phi_J, phi_R1, phi_R2).
Eigen::Matrix3d capacitance_matrix(const CircuitParams& params);

/// Closed-form inverse under C_T >> C_qk, C_Rk >> C_qk, including C_R1R2.
Eigen::Matrix3d approximate_inverse_capacitance(const CircuitParams& params);

/// Resonator-resonator coupling (rad/s) including a direct C_R1R2 channel.
/// Equals derive(params).kappa when C_R1R2 = 0.
double collateral_with_parasitic(const CircuitParams& params);

/// Same conversion applied to the exact inverse of capacitance_matrix().
double collateral_from_exact_inverse(const CircuitParams& params);

ValidityReport check_validity(const CircuitParams& params, const DerivedParams& derived,
                              double factor = 10.0);

}  // namespace collateral
