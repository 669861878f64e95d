#include "collateral/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "collateral/constants.hpp"
#include "collateral/errors.hpp"

namespace collateral {

double CircuitParams::asymmetry() const {
  const double sum = e_j1 + e_j2;
  return sum > 0.0 ? (e_j1 - e_j2) / sum : 0.0;
}

double CircuitParams::charging_energy() const {
  const double e = kSI.elementary_charge;
  return e * e / (2.0 * c_total);
}

void CircuitParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(fmt::format("{} must be strictly positive (got {})", name, v));
  };
  auto nonnegative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument(fmt::format("{} must be nonnegative (got {})", name, v));
  };
  positive(c_total, "C_T");
  positive(c_r1, "C_R1");
  positive(c_r2, "C_R2");
  positive(l_r1, "L_R1");
  positive(l_r2, "L_R2");
  nonnegative(c_q1, "C_q1");
  nonnegative(c_q2, "C_q2");
  nonnegative(c_r1r2, "C_R1R2");
  nonnegative(e_j1, "E_J1");
  nonnegative(e_j2, "E_J2");
  if (!std::isfinite(phi_ext.weber())) throw std::invalid_argument("Phi_ext must be finite");
}

CircuitParams CircuitParams::reference(double cq_divisor, double ej_over_ec) {
  CircuitParams p;
  p.c_total = 100.0 * kFemto;
  p.c_r1 = p.c_r2 = 400.0 * kFemto;
  p.l_r1 = p.l_r2 = 0.8 * kNano;
  p.c_q1 = p.c_r1 / cq_divisor;
  p.c_q2 = p.c_r2 / cq_divisor;
  p.e_j1 = p.e_j2 = ej_over_ec * p.charging_energy();
  return p;
}

double josephson_energy(const CircuitParams& params) {
  const double x = params.phi_ext.weber() / (2.0 * kSI.flux_quantum());
  const double d = params.asymmetry();
  const double c = std::cos(x);
  const double s = std::sin(x);
  return (params.e_j1 + params.e_j2) * std::sqrt(c * c + d * d * s * s);
}

DerivedParams derive(const CircuitParams& params) {
  params.validate();
  const double hbar = kSI.reduced_planck;

  DerivedParams out;
  out.charging_energy = params.charging_energy();
  out.josephson_energy = josephson_energy(params);

  const double ec = out.charging_energy;
  const double ej = out.josephson_energy;
  const double qubit_energy = std::sqrt(8.0 * ec * ej) - ec;
  if (!(qubit_energy > 0.0))
    throw DomainError(fmt::format("qubit frequency undefined at this flux (Phi_ext/Phi0 = {:.6g})",
                                  params.phi_ext.in_phi0()));
  out.omega_q = qubit_energy / hbar;

  out.omega_r1 = 1.0 / std::sqrt(params.c_r1 * params.l_r1);
  out.omega_r2 = 1.0 / std::sqrt(params.c_r2 * params.l_r2);
  out.zero_point_r1 = hbar * out.omega_r1 / 2.0;
  out.zero_point_r2 = hbar * out.omega_r2 / 2.0;

  auto coupling = [&](double cq, double cr, double eps) {
    return -(1.0 / hbar) * cq / std::sqrt(params.c_total * cr) *
           std::pow(2.0 * ec * ej * eps * eps, 0.25);
  };
  out.g1 = coupling(params.c_q1, params.c_r1, out.zero_point_r1);
  out.g2 = coupling(params.c_q2, params.c_r2, out.zero_point_r2);
  out.kappa = params.c_q1 * params.c_q2 / (params.c_total * std::sqrt(params.c_r1 * params.c_r2)) *
              std::sqrt(out.zero_point_r1 * out.zero_point_r2) / hbar;

  if (std::abs(out.omega_r1 - out.omega_r2) <= 1e-12 * out.omega_r1)
    out.detuning = out.omega_q - 0.5 * (out.omega_r1 + out.omega_r2);
  return out;
}

Eigen::Matrix3d capacitance_matrix(const CircuitParams& p) {
  Eigen::Matrix3d c;
  c << p.c_total + p.c_q1 + p.c_q2, -p.c_q1, -p.c_q2,
       -p.c_q1, p.c_r1 + p.c_q1 + p.c_r1r2, -p.c_r1r2,
       -p.c_q2, -p.c_r1r2, p.c_r2 + p.c_q2 + p.c_r1r2;
  return c;
}

Eigen::Matrix3d approximate_inverse_capacitance(const CircuitParams& p) {
  const double det = p.c_total * (p.c_r1 * p.c_r2 + p.c_r1r2 * (p.c_r1 + p.c_r2));
  Eigen::Matrix3d inv;
  const double j1 = p.c_q1 * p.c_r2 / det;
  const double j2 = p.c_q2 * p.c_r1 / det;
  const double r12 = (p.c_q1 * p.c_q2 + p.c_r1r2 * p.c_total) / det;
  inv << 1.0 / p.c_total, j1, j2,
         j1, p.c_total * (p.c_r2 + p.c_r1r2) / det, r12,
         j2, r12, p.c_total * (p.c_r1 + p.c_r1r2) / det;
  return inv;
}

namespace {

// A term C^-1_12 q_R1 q_R2 maps to hbar * coupling * (a1^dag a2 + h.c.) with
// charge zero-point amplitudes q_k^2 = C_Rk eps_Rk.
double resonator_coupling_from_inverse(const CircuitParams& p, double inverse_12) {
  const double w1 = 1.0 / std::sqrt(p.c_r1 * p.l_r1);
  const double w2 = 1.0 / std::sqrt(p.c_r2 * p.l_r2);
  const double hbar = kSI.reduced_planck;
  const double eps1 = hbar * w1 / 2.0;
  const double eps2 = hbar * w2 / 2.0;
  return inverse_12 * std::sqrt(p.c_r1 * p.c_r2 * eps1 * eps2) / hbar;
}

}  // namespace

double collateral_with_parasitic(const CircuitParams& params) {
  params.validate();
  return resonator_coupling_from_inverse(params, approximate_inverse_capacitance(params)(1, 2));
}

double collateral_from_exact_inverse(const CircuitParams& params) {
  params.validate();
  return resonator_coupling_from_inverse(params, capacitance_matrix(params).inverse()(1, 2));
}

ValidityReport check_validity(const CircuitParams& params, const DerivedParams& d, double factor) {
  ValidityReport r;
  const double gmax = std::max(std::abs(d.g1), std::abs(d.g2));
  const double coupling_max = std::max(gmax, std::abs(d.kappa));
  const double freq_min = std::min({d.omega_q, d.omega_r1, d.omega_r2});

  if (freq_min < factor * coupling_max) {
    r.rotating_wave = false;
    r.warnings.push_back(fmt::format(
        "rotating-wave condition weak: min frequency is only {:.3g}x the largest coupling",
        freq_min / coupling_max));
  }
  if (!d.detuning) {
    r.dispersive = false;
    r.warnings.emplace_back("resonators not degenerate: dispersive detuning undefined");
  } else if (std::abs(*d.detuning) < factor * gmax) {
    r.dispersive = false;
    r.warnings.push_back(fmt::format("dispersive condition weak: |Delta|/|g| = {:.3g}",
                                     std::abs(*d.detuning) / gmax));
  }
  const double cq_max = std::max(params.c_q1, params.c_q2);
  if (params.c_total < factor * cq_max || std::min(params.c_r1, params.c_r2) < factor * cq_max) {
    r.small_coupling = false;
    r.warnings.emplace_back("coupling capacitances not small against C_T / C_Rk");
  }
  return r;
}

}  // namespace collateral
