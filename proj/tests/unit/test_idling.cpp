#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <collateral/effective.hpp>
#include <collateral/errors.hpp>
#include <collateral/evolve.hpp>
#include <collateral/idling.hpp>

#include "oracles.hpp"

using namespace collateral;

namespace {

const CircuitParams kRef = CircuitParams::reference(50, 70);

// g_eff_ground straight from the independent formulas (opposing convention).
double oracle_ground_coupling(const CircuitParams& p, double flux, double kappa_scale = 1.0) {
  const oracle::Circuit c{p.c_total, p.c_q1, p.c_q2, p.c_r1, p.c_r2, p.l_r1, p.l_r2, p.e_j1, flux};
  const auto d = oracle::derive(c);
  return kappa_scale * d.kappa + d.g1 * d.g2 / (d.wq - d.wr1);
}

}  // namespace

TEST(IdlingNumeric, ReferencePoint) {
  const double phi = idling_flux_numeric(kRef);
  EXPECT_NEAR(phi, 1.015, 0.005);
  const double oracle_root =
      oracle::bisect([](double f) { return oracle_ground_coupling(kRef, f); }, 0.9, 1.1, 1e-12);
  EXPECT_NEAR(phi, oracle_root, 2e-6);
}

TEST(IdlingNumeric, RootResidual) {
  const double phi = idling_flux_numeric(kRef);
  EXPECT_LT(std::abs(ground_coupling_at(kRef, phi)), 1e-6 * derive(kRef).kappa * 10.0);
  IdlingSearch tight;
  tight.tol_phi0 = 1e-12;
  const double phi_tight = idling_flux_numeric(kRef, tight);
  EXPECT_LT(std::abs(ground_coupling_at(kRef, phi_tight)), 1e-6 * derive(kRef).kappa);
}

TEST(IdlingNumeric, NoRootWithoutKappa) {
  IdlingSearch s;
  s.kappa_scale = 0.0;
  try {
    idling_flux_numeric(kRef, s);
    FAIL() << "expected NoIdlingPoint";
  } catch (const NoIdlingPoint& e) {
    EXPECT_NE(std::string(e.what()).find("no idling point in range"), std::string::npos);
  }
}

TEST(IdlingNumeric, IndependentOfCouplingCapacitance) {
  const double a = idling_flux_numeric(CircuitParams::reference(50, 70));
  const double b = idling_flux_numeric(CircuitParams::reference(100, 70));
  EXPECT_NEAR(a, b, 1e-5);
}

TEST(IdlingNumeric, StrongerKappaMovesTowardResonance) {
  double previous_abs_delta = std::numeric_limits<double>::infinity();
  // The mediated term peaks near 1.24 kappa at zero flux; larger scales have no root.
  for (double scale : {1.0, 1.1, 1.2}) {
    IdlingSearch s;
    s.kappa_scale = scale;
    s.lo_phi0 = 0.05;
    const double phi = idling_flux_numeric(kRef, s);
    const double oracle_root = oracle::bisect(
        [&](double f) { return oracle_ground_coupling(kRef, f, scale); }, 0.05, 1.4, 1e-12);
    EXPECT_NEAR(phi, oracle_root, 2e-6);
    const double delta = std::abs(*derive(kRef.with_flux(Flux::from_phi0(phi))).detuning);
    EXPECT_LT(delta, previous_abs_delta);
    previous_abs_delta = delta;
  }
}

TEST(IdlingNumeric, CircuitConventionHasNoRootBelowResonators) {
  IdlingSearch s;
  s.sign = CollateralSign::circuit;
  EXPECT_THROW(idling_flux_numeric(kRef, s), NoIdlingPoint);
}

TEST(IdlingClosedForm, AgreesWithNumeric) {
  int reachable = 0;
  for (double ej : {40.0, 55.0, 70.0, 90.0})
    for (double divisor : {50.0, 75.0, 100.0}) {
      const auto p = CircuitParams::reference(divisor, ej);
      const IdlingSearch wide{.lo_phi0 = 0.02, .hi_phi0 = 3.0};
      double closed = 0.0;
      try {
        closed = idling_flux_closed_form(p);
      } catch (const NoIdlingPoint&) {
        EXPECT_THROW(idling_flux_numeric(p, wide), NoIdlingPoint)
            << "E_J/E_C = " << ej << ", C_R/C_q = " << divisor;
        continue;
      }
      ++reachable;
      EXPECT_NEAR(closed, idling_flux_numeric(p, wide), 1e-3)
          << "E_J/E_C = " << ej << ", C_R/C_q = " << divisor;
    }
  EXPECT_GE(reachable, 3);
  EXPECT_NEAR(idling_flux_closed_form(kRef), 1.015, 0.005);
}

TEST(IdlingClosedForm, SolvesTheCancellationCondition) {
  const double ej = idling_josephson_energy(kRef);
  const double phi = idling_flux_closed_form(kRef);
  EXPECT_NEAR(derive(kRef.with_flux(Flux::from_phi0(phi))).josephson_energy, ej, 1e-9 * ej);
  EXPECT_LT(std::abs(ground_coupling_at(kRef, phi)), 1e-6 * derive(kRef).kappa);
}

TEST(IdlingNumeric, WeakKappaPushesTowardHalfPeriod) {
  // Cancelling a vanishing kappa needs a vanishing mediated term, i.e. E_J~ -> 0.
  double previous = idling_flux_numeric(kRef);
  for (double scale : {0.3, 0.1, 0.03}) {
    IdlingSearch s;
    s.kappa_scale = scale;
    s.hi_phi0 = std::numbers::pi - 1e-3;
    s.scan_points = 4000;
    const double phi = idling_flux_numeric(kRef, s);
    EXPECT_GT(phi, previous);
    previous = phi;
  }
  EXPECT_GT(previous, 2.5);
}

TEST(IdlingClosedForm, RejectsAsymmetricResonators) {
  auto p = kRef;
  p.c_q1 *= 1.1;
  EXPECT_THROW(idling_flux_closed_form(p), std::invalid_argument);
}

TEST(IdlingClosedForm, JunctionAsymmetryMatchesNumeric) {
  auto p = kRef;
  p.e_j1 *= 1.1;
  p.e_j2 *= 0.9;
  EXPECT_NEAR(idling_flux_closed_form(p), idling_flux_numeric(p), 1e-3);
}

TEST(IdlingClosedForm, UnreachableForSmallJosephsonEnergy) {
  // A very weak junction cannot reach the required E_J~*.
  const auto p = CircuitParams::reference(50, 10);
  EXPECT_THROW(idling_flux_closed_form(p), NoIdlingPoint);
}

TEST(CouplingCurve, ShapesAroundIdlingPoint) {
  const double phi = idling_flux_numeric(kRef);
  std::vector<double> grid = linspace(0.8, 1.2, 401);
  grid.push_back(phi);
  std::sort(grid.begin(), grid.end());
  const auto curve = effective_coupling_curve(kRef, grid);
  ASSERT_EQ(curve.size(), grid.size());

  const auto at = std::find_if(curve.begin(), curve.end(), [&](const auto& c) { return c.flux_phi0 == phi; });
  ASSERT_NE(at, curve.end());
  EXPECT_LT(at->g_eff_abs, 1e-4 * std::abs(derive(kRef).g1));
  for (const auto& c : curve) EXPECT_GT(c.g_eff_abs_kappa0, 0.0);
}

TEST(CouplingCurve, CurvesCoincideFarFromIdling) {
  // Close to the qubit-resonator crossing the mediated term dominates kappa.
  auto p = CircuitParams::reference(50, 100);
  const auto grid = linspace(0.0, 0.2, 11);
  for (const auto& c : effective_coupling_curve(p, grid))
    EXPECT_NEAR(c.g_eff_abs, c.g_eff_abs_kappa0, 0.5 * c.g_eff_abs_kappa0);
}

TEST(CouplingCurve, CsvHeader) {
  const std::vector<double> grid{1.0, 1.01};
  const std::string csv = curve_to_csv(effective_coupling_curve(kRef, grid));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "flux_over_phi0,g_eff_abs_hz,g_eff_abs_kappa0_hz");
}

TEST(IdlingDynamics, GroundStateFreezesAtRoot) {
  const double phi = idling_flux_numeric(kRef);
  const auto dp = derive(kRef.with_flux(Flux::from_phi0(phi)));
  // Swap period the mediated channel alone would produce.
  const double mediated = std::abs(dp.g1 * dp.g2 / *dp.detuning);
  const double window = 3.0 * std::numbers::pi / mediated;

  const HilbertSpace s(3, 2);
  const StateVector psi = basis_state(s, 1, Level::g, 0);
  const auto tr = population_trace(hamiltonian_at_flux(s, kRef, Flux::from_phi0(phi)), psi, psi,
                                   linspace(0.0, window, 3001));
  EXPECT_GT(*std::min_element(tr.begin(), tr.end()), 0.98);
}
