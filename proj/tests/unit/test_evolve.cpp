#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <collateral/effective.hpp>
#include <collateral/errors.hpp>
#include <collateral/evolve.hpp>

#include "oracles.hpp"

using namespace collateral;

namespace {

const CircuitParams kRef = CircuitParams::reference(50, 70);

StateVector superposition(const HilbertSpace& s) {
  return (basis_state(s, 1, Level::g, 0) + basis_state(s, 0, Level::e, 1) * Complex(0.3, 0.4) +
          basis_state(s, 2, Level::g, 0) * Complex(0.0, -0.5))
      .normalized();
}

}  // namespace

TEST(Propagate, ZeroTimeIsIdentity) {
  const HilbertSpace s(2, 2);
  const StateVector psi = superposition(s);
  const StateVector out = propagate(full_rwa(s, derive(kRef)), psi, 0.0);
  EXPECT_EQ(out.amplitudes(), psi.amplitudes());
}

TEST(Propagate, DiagonalHamiltonianGivesPhases) {
  const HilbertSpace s(1, 2);
  ComplexMatrix h = ComplexMatrix::Zero(s.dim(), s.dim());
  for (Eigen::Index i = 0; i < s.dim(); ++i) h(i, i) = 1e9 * (i + 1);
  ComplexVector v = ComplexVector::Constant(s.dim(), 1.0 / std::sqrt(double(s.dim())));
  const double t = 3.7e-9;
  const StateVector out = propagate(Operator(s, h), StateVector(s, v), t);
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    const Complex expect = v(i) * std::polar(1.0, -1e9 * (i + 1) * t);
    EXPECT_NEAR(std::abs(out.amplitudes()(i) - expect), 0.0, 1e-12);
  }
}

TEST(Propagate, RejectsNonHermitian) {
  const HilbertSpace s(1, 2);
  const Operator a = annihilator(s, Subsystem::r1) * Complex(1e9);
  EXPECT_THROW(propagate(a, basis_state(s, 0, 0, 0), 1e-9), std::invalid_argument);
}

TEST(Propagate, MatchesRk4OnSingleExcitationBlock) {
  // g1 = g2 = g, kappa and Delta in the dispersive regime, in the rotating
  // frame of the resonators to keep the RK4 step count moderate.
  DerivedParams dp = derive(kRef.with_flux(Flux::from_phi0(1.0)));
  dp.omega_q -= dp.omega_r1;
  dp.omega_r2 -= dp.omega_r1;
  dp.omega_r1 = 0.0;
  const HilbertSpace s(1, 2);
  const Operator h = full_rwa(s, dp);
  const StateVector psi0 = basis_state(s, 1, Level::g, 0);
  const double t = 60e-9;

  const Eigen::Index idx[3] = {s.index(1, 0, 0), s.index(0, 1, 0), s.index(0, 0, 1)};
  Eigen::MatrixXcd block(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) block(i, j) = h.matrix()(idx[i], idx[j]);
  const double emax = block.cwiseAbs().rowwise().sum().maxCoeff();
  const int steps = static_cast<int>(std::ceil(t * 100.0 * emax));
  const Eigen::VectorXcd ref = oracle::rk4(block, Eigen::Vector3cd(1.0, 0.0, 0.0), t, steps);

  const StateVector out = propagate(h, psi0, t);
  double err = 0.0;
  for (int i = 0; i < 3; ++i) err += std::norm(out.amplitudes()(idx[i]) - ref(i));
  EXPECT_LT(std::sqrt(err), 1e-6);
}

TEST(Propagate, NormAndUnitarity) {
  const HilbertSpace s(3, 2);
  const Operator h = hamiltonian_at_flux(s, kRef, Flux::from_phi0(1.013));
  const StateVector a = superposition(s);
  const StateVector b = basis_state(s, 0, Level::e, 2);
  const Complex before = a.inner(b);
  for (double t : {1e-9, 3.3e-8, 1.5e-6}) {
    const StateVector at = propagate(h, a, t);
    const StateVector bt = propagate(h, b, t);
    EXPECT_NEAR(at.norm(), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(at.inner(bt) - before), 0.0, 1e-9);
  }
}

TEST(Propagate, TimeComposition) {
  const HilbertSpace s(2, 3);
  const Operator h = hamiltonian_at_flux(s, kRef, Flux::from_phi0(0.8), {HamiltonianVariant::transmon});
  const StateVector psi = basis_state(s, 1, Level::g, 1);
  const StateVector two_step = propagate(h, propagate(h, psi, 2.1e-8), 4.4e-8);
  const StateVector one_step = propagate(h, psi, 6.5e-8);
  EXPECT_LT((two_step + one_step * Complex(-1.0)).norm(), 1e-9);
}

TEST(Propagate, ExcitationConservedUnderRwa) {
  const HilbertSpace s(4, 2);
  const Operator h = hamiltonian_at_flux(s, kRef, Flux::from_phi0(1.0));
  const Operator n = total_excitation_operator(s);
  const StateVector psi = (basis_state(s, 2, Level::g, 0) + basis_state(s, 1, Level::e, 0)).normalized();
  const double n0 = psi.inner(n * psi).real();
  for (double t = 0.0; t < 1e-6; t += 1.1e-7) {
    const StateVector pt = propagate(h, psi, t);
    EXPECT_NEAR(pt.inner(n * pt).real(), n0, 1e-9);
  }
}

TEST(PopulationTrace, Trivial) {
  const HilbertSpace s(2, 2);
  DerivedParams dp = derive(kRef);
  const StateVector psi = basis_state(s, 1, Level::g, 0);
  const auto times = linspace(0.0, 1e-6, 51);
  const auto tr = population_trace(full_rwa(s, dp), psi, psi, times);
  EXPECT_DOUBLE_EQ(tr.front(), 1.0);
  dp.g1 = dp.g2 = dp.kappa = 0.0;
  for (double p : population_trace(full_rwa(s, dp), psi, psi, times)) EXPECT_NEAR(p, 1.0, 1e-12);
}

TEST(PopulationTrace, DispersiveSwapTime) {
  // Away from the idling point the ground-manifold exchange is a two-level
  // Rabi oscillation between |1g0> and |0g1> with half period pi / 2|g_eff|.
  struct Case {
    CircuitParams p;
    CollateralSign sign;
  };
  const Case cases[] = {
      {kRef.with_flux(Flux::from_phi0(0.6)), CollateralSign::circuit},
      {CircuitParams::reference(50, 100), CollateralSign::opposing},
  };
  for (const auto& c : cases) {
    const DerivedParams dp = derive(c.p);
    const EffectiveParams ep = effective_params(dp, c.sign);
    const double half = std::numbers::pi / (2.0 * std::abs(ep.g_eff_ground));

    const HilbertSpace s(1, 2);
    const auto times = linspace(0.0, 1.5 * half, 6001);
    const auto tr = population_trace(full_rwa(s, dp, c.sign), basis_state(s, 1, Level::g, 0),
                                     basis_state(s, 0, Level::g, 1), times);
    const auto peak = std::max_element(tr.begin(), tr.end()) - tr.begin();
    EXPECT_GT(tr[peak], 0.95);
    EXPECT_NEAR(times[peak], half, 0.05 * half);
  }
}

TEST(Linspace, Endpoints) {
  const auto v = linspace(0.9, 1.1, 201);
  ASSERT_EQ(v.size(), 201u);
  EXPECT_EQ(v.front(), 0.9);
  EXPECT_EQ(v.back(), 1.1);
  EXPECT_NEAR(v[100], 1.0, 1e-15);
}

TEST(SweepFlux, GridShapeAndRange) {
  const auto flux = linspace(0.95, 1.05, 11);
  const auto times = linspace(0.0, 5e-7, 21);
  SweepOptions opt;
  opt.threads = 3;
  const TraceGrid g = sweep_flux(kRef, flux, times, opt);
  EXPECT_EQ(g.rows(), 21u);
  EXPECT_EQ(g.cols(), 11u);
  for (std::size_t j = 0; j < g.cols(); ++j) {
    ASSERT_TRUE(g.column_valid(j));
    ASSERT_EQ(g.populations[j].size(), 21u);
    for (double p : g.populations[j]) {
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0 + 1e-9);
    }
  }
}

TEST(SweepFlux, ThreadCountDoesNotChangeResults) {
  const auto flux = linspace(0.9, 1.1, 9);
  const auto times = linspace(0.0, 1e-6, 11);
  SweepOptions one;
  SweepOptions many;
  many.threads = 4;
  EXPECT_EQ(to_csv(sweep_flux(kRef, flux, times, one)), to_csv(sweep_flux(kRef, flux, times, many)));
}

TEST(SweepFlux, InvalidColumnsAreKept) {
  const double pi = std::numbers::pi;
  const std::vector<double> flux{1.0, 1.1, pi};
  const auto times = linspace(0.0, 1e-7, 3);
  const TraceGrid g = sweep_flux(kRef, flux, times);
  EXPECT_EQ(g.valid_columns(), 2u);
  EXPECT_FALSE(g.column_valid(2));
  EXPECT_TRUE(std::isnan(g.column_min(2)));
  EXPECT_NE(to_csv(g).find("nan"), std::string::npos);
}

TEST(SweepFlux, TruncationChecked) {
  SweepOptions opt;
  opt.photons = 3;
  opt.n_max = 2;
  const std::vector<double> flux{1.0};
  const std::vector<double> times{0.0};
  EXPECT_THROW(sweep_flux(kRef, flux, times, opt), TruncationError);
}

TEST(SweepFlux, NoFrozenColumnWithoutKappa) {
  const auto flux = linspace(0.9, 1.1, 41);
  const auto times = linspace(0.0, 1.5e-6, 301);
  SweepOptions opt;
  opt.kappa_override = 0.0;
  opt.threads = 2;
  const TraceGrid g = sweep_flux(kRef, flux, times, opt);
  for (std::size_t j = 0; j < g.cols(); ++j) EXPECT_LT(g.column_min(j), 0.9) << g.flux_phi0[j];
}

TEST(SweepFlux, MostFrozenColumnNearIdlingPoint) {
  const auto flux = linspace(0.9, 1.1, 201);
  const auto times = linspace(0.0, 1.5e-6, 301);
  SweepOptions opt;
  opt.threads = 2;
  const TraceGrid g = sweep_flux(kRef, flux, times, opt);
  const auto j = g.most_frozen_column();
  EXPECT_NEAR(g.flux_phi0[j], 1.013, 0.005);
  EXPECT_GT(g.column_min(j), 0.98);
}

TEST(SweepFlux, CsvAndJson) {
  const std::vector<double> flux{1.0, 1.01};
  const auto times = linspace(0.0, 1e-8, 3);
  const TraceGrid g = sweep_flux(kRef, flux, times);
  const std::string csv = to_csv(g);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "time_s,flux_over_phi0,population");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);

  const auto doc = nlohmann::json::parse(to_json(g));
  EXPECT_EQ(doc["photons"], 1);
  EXPECT_EQ(doc["populations"].size(), 2u);
}
