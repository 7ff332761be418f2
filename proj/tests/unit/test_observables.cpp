#include "dhub/analytic.hpp"
#include "dhub/basis.hpp"
#include "dhub/observables.hpp"
#include "dhub/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dhub;

namespace {

ModelParams make(int n, double lambda, double kappa, int ntr = 30) {
  ModelParams p;
  p.n_qubits = n;
  p.lambda = lambda;
  p.kappa = kappa;
  p.n_trunc = ntr;
  return p;
}

}  // namespace

TEST(PhotonNumber, VacuumAtZeroCoupling) {
  const GroundState gs = solve_at_fixed_psi(make(3, 0.0, 0.1), 0.0);
  EXPECT_NEAR(photon_number(gs), 0.0, 1e-12);
  EXPECT_NEAR(photon_number(to_bare_basis(gs)), 0.0, 1e-12);
}

TEST(PhotonNumber, DisplacedAndBareFormulasAgree) {
  const GroundState gs = solve_at_fixed_psi(make(4, 0.9, 0.1), 0.7);
  EXPECT_NEAR(photon_number(gs), photon_number(to_bare_basis(gs)), 1e-8);
}

TEST(PhotonNumber, LargeNMatchesHolsteinPrimakoff) {
  const ModelParams p = make(48, 0.75, 0.0, 20);
  const double alpha = hp_minimize(p).alpha;
  const double per_qubit = photon_number(solve_at_fixed_psi(p, 0.0)) / 48.0;
  EXPECT_NEAR(per_qubit, alpha * alpha, 0.05 * alpha * alpha);
}

TEST(Parity, DecoupledStateIsEven) {
  const GroundState gs = solve_at_fixed_psi(make(2, 0.0, 0.0), 0.0);
  EXPECT_NEAR(parity_expectation(to_bare_basis(gs)), 1.0, 1e-12);
}

TEST(Parity, ConservedWithoutHopping) {
  for (double lambda : {0.2, 0.5, 0.9}) {
    const PointSolution s = solve_point(make(6, lambda, 0.0, 40), std::nullopt, true);
    EXPECT_NEAR(std::abs(parity_expectation(s.bare)), 1.0, 1e-6) << "lambda=" << lambda;
  }
}

TEST(Parity, BrokenDeepInOrderedPhase) {
  const PointSolution s = solve_point(make(6, 1.0, 0.1, 40), std::nullopt, true);
  ASSERT_GT(s.psi, 1.0);
  EXPECT_LT(std::abs(parity_expectation(s.bare)), 0.9);
}

TEST(Fidelity, SymmetricAndNormalized) {
  const ModelParams p = make(2, 0.4, 0.1);
  const BareState a = to_bare_basis(solve_at_fixed_psi(p, 0.2));
  ModelParams q = p;
  q.lambda = 0.6;
  const BareState b = to_bare_basis(solve_at_fixed_psi(q, 0.5));
  EXPECT_NEAR(fidelity(a, a), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(fidelity(a, b), fidelity(b, a));
  EXPECT_LT(fidelity(a, b), 1.0);
  EXPECT_GE(fidelity(a, b), 0.0);
}

TEST(Fidelity, SmoothFarFromCriticality) {
  const double dl = 1e-3;
  const PointSolution a = solve_point(make(2, 0.1, 0.1), std::nullopt, true);
  const PointSolution b = solve_point(make(2, 0.1 + dl, 0.1), std::nullopt, true);
  const double f = fidelity(a.bare, b.bare);
  EXPECT_LE(1.0 - f, 10.0 * dl * dl);
  EXPECT_GE(f, 1.0 - 1e-12 - 10.0 * dl * dl);
}

TEST(Fidelity, RejectsIncompatibleStates) {
  const BareState two = to_bare_basis(solve_at_fixed_psi(make(2, 0.3, 0.1), 0.0));
  const BareState three = to_bare_basis(solve_at_fixed_psi(make(3, 0.3, 0.1), 0.0));
  EXPECT_THROW(fidelity(two, three), TruncationMismatch);
  BareState broken = two;
  broken.coeffs *= 0.5;
  EXPECT_THROW(fidelity(two, broken), TruncationMismatch);
}

TEST(FidelitySusceptibility, PeaksAtOnsetForCrt) {
  std::vector<double> lambdas;
  for (int i = 0; i <= 20; ++i) lambdas.push_back(0.2 + 0.03 * i);
  const FsCurve c = fidelity_susceptibility_curve(make(4, 0.0, 0.1, 30), lambdas);
  const auto peaks = local_maxima(c);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_DOUBLE_EQ(c.peak_lambda, lambdas[peaks[0]]);
  EXPECT_DOUBLE_EQ(c.fs_renormalized[peaks[0]], 1.0);
  // the order parameter switches on next to the peak
  EXPECT_LT(c.psi[peaks[0] - 2], 1e-3);
  EXPECT_GT(c.psi[peaks[0] + 2], 1e-3);
  // far below the transition the curve is flat
  EXPECT_LT(c.fs_renormalized[0], 0.1);
}

TEST(LocalMaxima, IgnoresRoundOffPlateaus) {
  FsCurve c;
  c.fs = {0.0, 1e-9, 0.0, 2e-9, 1.0, 0.3, 0.5, 0.2, 0.2};
  c.valid.assign(c.fs.size(), true);
  c.valid[6] = false;
  const auto peaks = local_maxima(c);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_EQ(peaks[0], 4u);
}
