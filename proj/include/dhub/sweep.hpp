// Phase-diagram grids over (lambda, kappa) or (lambda, N) and boundary extraction.

#pragma once

#include "dhub/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dhub {

enum class SecondAxis { Kappa, NQubits };

std::string to_string(SecondAxis axis);

struct SweepConfig {
  ModelParams base;
  std::vector<double> lambdas;
  SecondAxis axis2 = SecondAxis::Kappa;
  std::vector<double> axis2_values;
  bool warm_start = true;
  int workers = 1;
};

struct SweepCell {
  double lambda = 0.0;
  double kappa = 0.0;
  int n_qubits = 0;
  double energy = 0.0;
  double psi = 0.0;
  double psi_rescaled = 0.0;
  double photon_number = 0.0;
  bool converged = false;
  int iterations = 0;

  bool operator==(const SweepCell&) const = default;
};

struct SweepGrid {
  std::string axis1_name = "lambda";
  std::string axis2_name = "kappa";
  std::vector<double> axis1;
  std::vector<double> axis2;
  // row-major: cells[i2 * axis1.size() + i1]
  std::vector<SweepCell> cells;

  const SweepCell& at(std::size_t i2, std::size_t i1) const { return cells[i2 * axis1.size() + i1]; }
  std::size_t unconverged() const;
  bool operator==(const SweepGrid&) const = default;
};

ModelParams point_params(const SweepConfig& config, std::size_t i2, double lambda);

// Rows of the second axis run on a pool of `workers` threads; inside a row lambda
// ascends and each point is warm-started from its left neighbour's psi.
SweepGrid run_sweep(const SweepConfig& config);

struct BoundaryCurve {
  std::vector<double> kappa;
  std::vector<std::optional<double>> lambda_c_numeric;   // absent: no onset in the row
  std::vector<std::optional<double>> lambda_c_analytic;  // absent: z kappa >= omega0
};

// First lambda of each kappa row with |psi|/sqrt(N) > threshold, bracketed by
// the grid and refined by bisection. Rows without an onset carry no numeric value.
BoundaryCurve extract_boundary(const SweepGrid& grid, const SweepConfig& config,
                               double threshold = 1e-3, int bisection_steps = 6);

// Onsets (localized -> delocalized, ascending lambda) along one row of cells.
std::vector<std::size_t> onset_indices(const std::vector<SweepCell>& row, double threshold);

// Bisection on [lo, hi] for the psi-onset at fixed params (lambda varies).
double refine_onset(const ModelParams& params, double lo, double hi, double threshold, int steps);

}  // namespace dhub
