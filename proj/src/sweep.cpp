#include "dhub/sweep.hpp"

#include "dhub/analytic.hpp"
#include "dhub/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace dhub {

std::string to_string(SecondAxis axis) { return axis == SecondAxis::Kappa ? "kappa" : "nqubits"; }

std::size_t SweepGrid::unconverged() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const SweepCell& c) { return !c.converged; }));
}

ModelParams point_params(const SweepConfig& config, std::size_t i2, double lambda) {
  ModelParams p = config.base;
  p.lambda = lambda;
  if (config.axis2 == SecondAxis::Kappa) {
    p.kappa = config.axis2_values[i2];
  } else {
    p.n_qubits = static_cast<int>(std::lround(config.axis2_values[i2]));
  }
  return p;
}

namespace {

SweepCell make_cell(const ModelParams& p, const PointSolution& s) {
  SweepCell c;
  c.lambda = p.lambda;
  c.kappa = p.kappa;
  c.n_qubits = p.n_qubits;
  c.energy = s.energy;
  c.psi = s.psi;
  c.psi_rescaled = std::abs(s.psi) / std::sqrt(static_cast<double>(p.n_qubits));
  c.photon_number = s.photon_number;
  c.converged = s.converged;
  c.iterations = s.iterations;
  return c;
}

void check_axis(const std::vector<double>& values, const char* name) {
  if (values.empty()) throw InvalidParameter(name, "axis is empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) throw InvalidParameter(name, "axis must be strictly ascending");
  }
}

}  // namespace

SweepGrid run_sweep(const SweepConfig& config) {
  check_axis(config.lambdas, "lambda");
  check_axis(config.axis2_values, to_string(config.axis2).c_str());
  for (std::size_t i2 = 0; i2 < config.axis2_values.size(); ++i2) {
    validate(point_params(config, i2, config.lambdas.front()));
  }

  SweepGrid grid;
  grid.axis2_name = to_string(config.axis2);
  grid.axis1 = config.lambdas;
  grid.axis2 = config.axis2_values;
  grid.cells.resize(grid.axis1.size() * grid.axis2.size());

  auto run_row = [&](std::size_t i2) {
    std::optional<double> warm;
    for (std::size_t i1 = 0; i1 < grid.axis1.size(); ++i1) {
      const ModelParams p = point_params(config, i2, grid.axis1[i1]);
      PointSolution s = solve_point(p, config.warm_start ? warm : std::nullopt);
      warm = s.converged ? std::optional<double>(s.psi) : std::nullopt;
      grid.cells[i2 * grid.axis1.size() + i1] = make_cell(p, s);
    }
  };

  const std::size_t rows = grid.axis2.size();
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(config.workers, 1)), 1, rows);
  if (workers == 1) {
    for (std::size_t i2 = 0; i2 < rows; ++i2) run_row(i2);
    return grid;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i2 = next++; i2 < rows; i2 = next++) {
        try {
          run_row(i2);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return grid;
}

std::vector<std::size_t> onset_indices(const std::vector<SweepCell>& row, double threshold) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const bool above = row[i].psi_rescaled > threshold;
    const bool below_before = i > 0 && row[i - 1].psi_rescaled <= threshold;
    if (above && below_before) out.push_back(i);
  }
  return out;
}

double refine_onset(const ModelParams& params, double lo, double hi, double threshold, int steps) {
  const double root_n = std::sqrt(static_cast<double>(params.n_qubits));
  for (int s = 0; s < steps; ++s) {
    ModelParams mid = params;
    mid.lambda = 0.5 * (lo + hi);
    const PointSolution sol = solve_point(mid);
    if (std::abs(sol.psi) / root_n > threshold) {
      hi = mid.lambda;
    } else {
      lo = mid.lambda;
    }
  }
  return 0.5 * (lo + hi);
}

BoundaryCurve extract_boundary(const SweepGrid& grid, const SweepConfig& config, double threshold,
                               int bisection_steps) {
  if (config.axis2 != SecondAxis::Kappa) {
    throw InvalidParameter("axis2", "boundary extraction needs a (lambda, kappa) grid");
  }
  if (config.base.coupling_form != CouplingForm::FullCRT) {
    throw InvalidParameter("mode", "boundary extraction is defined for the full coupling");
  }
  BoundaryCurve curve;
  curve.kappa = grid.axis2;
  const std::size_t width = grid.axis1.size();
  for (std::size_t i2 = 0; i2 < grid.axis2.size(); ++i2) {
    std::optional<double> numeric;
    for (std::size_t i1 = 0; i1 < width; ++i1) {
      if (grid.at(i2, i1).psi_rescaled > threshold) {
        if (i1 > 0) {
          const ModelParams p = point_params(config, i2, grid.axis1[i1]);
          numeric = refine_onset(p, grid.axis1[i1 - 1], grid.axis1[i1], threshold, bisection_steps);
        }
        break;
      }
    }
    curve.lambda_c_numeric.push_back(numeric);

    const ModelParams p = point_params(config, i2, 0.0);
    if (p.hopping() < p.omega0) {
      curve.lambda_c_analytic.push_back(hp_critical_coupling(p));
    } else {
      curve.lambda_c_analytic.push_back(std::nullopt);
    }
  }
  return curve;
}

}  // namespace dhub
