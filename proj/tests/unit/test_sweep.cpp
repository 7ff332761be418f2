#include "dhub/sweep.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dhub;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
  return v;
}

SweepConfig smoke() {
  SweepConfig c;
  c.base.n_qubits = 2;
  c.base.n_trunc = 20;
  c.lambdas = grid(0.0, 1.5, 10);
  c.axis2_values = grid(0.0, 0.2, 10);
  return c;
}

}  // namespace

TEST(Sweep, LayoutAndZeroCouplingColumn) {
  SweepConfig c = smoke();
  c.lambdas = grid(0.0, 1.0, 4);
  c.axis2_values = {0.0, 0.1};
  const SweepGrid g = run_sweep(c);
  ASSERT_EQ(g.cells.size(), 8u);
  EXPECT_EQ(g.axis2_name, "kappa");
  for (std::size_t i2 = 0; i2 < 2; ++i2) {
    EXPECT_NEAR(g.at(i2, 0).psi, 0.0, 1e-6);
    for (std::size_t i1 = 0; i1 < 4; ++i1) {
      EXPECT_DOUBLE_EQ(g.at(i2, i1).lambda, c.lambdas[i1]);
      EXPECT_DOUBLE_EQ(g.at(i2, i1).kappa, c.axis2_values[i2]);
      EXPECT_EQ(g.at(i2, i1).n_qubits, 2);
    }
  }
  EXPECT_EQ(g.unconverged(), 0u);
}

TEST(Sweep, WarmStartMatchesColdStart) {
  SweepConfig c = smoke();
  const SweepGrid warm = run_sweep(c);
  c.warm_start = false;
  const SweepGrid cold = run_sweep(c);
  ASSERT_EQ(warm.cells.size(), cold.cells.size());
  for (std::size_t i = 0; i < warm.cells.size(); ++i) {
    EXPECT_NEAR(warm.cells[i].energy, cold.cells[i].energy, 1e-4) << i;
    EXPECT_NEAR(warm.cells[i].psi, cold.cells[i].psi, 1e-4) << i;
  }
}

TEST(Sweep, DeterministicAcrossRunsAndWorkerCounts) {
  SweepConfig c = smoke();
  c.lambdas = grid(0.2, 1.2, 6);
  c.axis2_values = {0.05, 0.1, 0.15};
  const SweepGrid a = run_sweep(c);
  const SweepGrid b = run_sweep(c);
  c.workers = 3;
  const SweepGrid threaded = run_sweep(c);
  EXPECT_TRUE(a == b);
  EXPECT_TRUE(a == threaded);
}

TEST(Sweep, QubitAxis) {
  SweepConfig c;
  c.base.kappa = 0.1;
  c.base.n_trunc = 30;
  c.lambdas = {1.2};
  c.axis2 = SecondAxis::NQubits;
  c.axis2_values = {2, 4, 6};
  const SweepGrid g = run_sweep(c);
  EXPECT_EQ(g.axis2_name, "nqubits");
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(g.at(i, 0).n_qubits, 2 * static_cast<int>(i + 1));
    EXPECT_NEAR(g.at(i, 0).psi_rescaled, std::abs(g.at(i, 0).psi) / std::sqrt(2.0 * (i + 1)), 1e-15);
  }
  EXPECT_LE(g.at(0, 0).psi_rescaled, g.at(1, 0).psi_rescaled);
  EXPECT_LE(g.at(1, 0).psi_rescaled, g.at(2, 0).psi_rescaled);
}

TEST(Sweep, RejectsBadAxes) {
  SweepConfig c = smoke();
  c.lambdas = {0.5, 0.4};
  EXPECT_THROW(run_sweep(c), InvalidParameter);
  c = smoke();
  c.axis2_values.clear();
  EXPECT_THROW(run_sweep(c), InvalidParameter);
}

TEST(Sweep, CrtRowHasSingleMonotoneOnset) {
  SweepConfig c;
  c.base.n_qubits = 2;
  c.base.n_trunc = 30;
  c.lambdas = grid(0.0, 2.0, 41);
  c.axis2_values = {0.1};
  const SweepGrid g = run_sweep(c);
  const auto onsets = onset_indices(g.cells, 1e-3);
  ASSERT_EQ(onsets.size(), 1u);
  for (std::size_t i = onsets[0] + 1; i < g.cells.size(); ++i) {
    EXPECT_GE(g.cells[i].psi_rescaled, g.cells[i - 1].psi_rescaled - 1e-4);
  }
}

TEST(Onset, SyntheticRow) {
  std::vector<SweepCell> row(7);
  const double psi[] = {0.0, 0.0, 0.5, 0.6, 0.0, 0.2, 0.3};
  for (int i = 0; i < 7; ++i) {
    row[i].psi_rescaled = psi[i];
    row[i].converged = true;
  }
  const auto idx = onset_indices(row, 1e-3);
  ASSERT_EQ(idx.size(), 2u);
  EXPECT_EQ(idx[0], 2u);
  EXPECT_EQ(idx[1], 5u);
}

TEST(Boundary, BracketedRefinementAndOverlay) {
  SweepConfig c;
  c.base.n_qubits = 6;
  c.base.n_trunc = 30;
  c.lambdas = grid(0.2, 1.0, 9);
  c.axis2_values = {0.05, 0.1, 0.4};
  const SweepGrid g = run_sweep(c);
  const BoundaryCurve b = extract_boundary(g, c);
  ASSERT_EQ(b.kappa.size(), 3u);
  for (std::size_t i = 0; i < 2; ++i) {
    ASSERT_TRUE(b.lambda_c_numeric[i].has_value());
    ASSERT_TRUE(b.lambda_c_analytic[i].has_value());
    EXPECT_GT(*b.lambda_c_numeric[i], 0.2);
    EXPECT_LT(*b.lambda_c_numeric[i], 1.0);
  }
  // z kappa > omega0: no closed form
  EXPECT_FALSE(b.lambda_c_analytic[2].has_value());
  // stronger hopping moves the boundary down
  EXPECT_LT(*b.lambda_c_numeric[1], *b.lambda_c_numeric[0]);
}

TEST(Boundary, RowWithoutOnsetIsEmpty) {
  SweepConfig c;
  c.base.n_qubits = 2;
  c.base.n_trunc = 20;
  c.lambdas = grid(0.0, 0.2, 3);
  c.axis2_values = {0.05};
  const BoundaryCurve b = extract_boundary(run_sweep(c), c);
  EXPECT_FALSE(b.lambda_c_numeric[0].has_value());
}

TEST(Boundary, RequiresKappaAxisAndFullCoupling) {
  SweepConfig c = smoke();
  c.lambdas = {0.5, 1.0};
  c.axis2_values = {0.1};
  c.axis2 = SecondAxis::NQubits;
  c.axis2_values = {2};
  EXPECT_THROW(extract_boundary(run_sweep(c), c), InvalidParameter);
  c.axis2 = SecondAxis::Kappa;
  c.axis2_values = {0.1};
  c.base.coupling_form = CouplingForm::RWA;
  EXPECT_THROW(extract_boundary(run_sweep(c), c), InvalidParameter);
}
