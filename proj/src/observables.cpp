#include "dhub/observables.hpp"

#include "dhub/solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace dhub {

double photon_number(const GroundState& state) {
  const auto& c = state.coeffs;
  double total = 0.0;
  for (Eigen::Index n = 0; n < c.rows(); ++n) {
    const double g = state.g_per_m[n];
    double number = 0.0;
    double quadrature = 0.0;  // <A + A^dag>
    for (Eigen::Index k = 0; k < c.cols(); ++k) {
      number += static_cast<double>(k) * c(n, k) * c(n, k);
      if (k + 1 < c.cols()) quadrature += 2.0 * std::sqrt(static_cast<double>(k + 1)) * c(n, k) * c(n, k + 1);
    }
    total += number - g * quadrature + g * g * c.row(n).squaredNorm();
  }
  return total;
}

double photon_number(const BareState& state) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < state.coeffs.cols(); ++k) {
    total += static_cast<double>(k) * state.coeffs.col(k).squaredNorm();
  }
  return total;
}

double parity_expectation(const BareState& state) {
  double p = 0.0;
  for (Eigen::Index n = 0; n < state.coeffs.rows(); ++n) {
    for (Eigen::Index k = 0; k < state.coeffs.cols(); ++k) {
      const double w = state.coeffs(n, k) * state.coeffs(n, k);
      p += ((n + k) % 2 == 0) ? w : -w;
    }
  }
  return p;
}

double fidelity(const BareState& a, const BareState& b) {
  if (a.coeffs.rows() != b.coeffs.rows()) {
    throw TruncationMismatch("fidelity between states with different qubit numbers");
  }
  for (const BareState* s : {&a, &b}) {
    if (std::abs(s->coeffs.squaredNorm() - 1.0) > 1e-4) {
      throw TruncationMismatch("state norm deviates from 1 in the common bare basis");
    }
  }
  const Eigen::Index shared = std::min(a.coeffs.cols(), b.coeffs.cols());
  const double overlap = a.coeffs.leftCols(shared).cwiseProduct(b.coeffs.leftCols(shared)).sum();
  return overlap * overlap;
}

FsCurve fidelity_susceptibility_curve(const ModelParams& params, const std::vector<double>& lambdas,
                                      double dlambda) {
  validate(params);
  if (!(dlambda > 0.0)) throw InvalidParameter("dlambda", "must be > 0");
  FsCurve curve;
  curve.lambdas = lambdas;
  curve.fs.assign(lambdas.size(), 0.0);
  curve.psi.assign(lambdas.size(), 0.0);
  curve.valid.assign(lambdas.size(), false);

  std::optional<double> warm;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    ModelParams here = params;
    here.lambda = lambdas[i];
    ModelParams there = here;
    there.lambda = lambdas[i] + dlambda;
    const PointSolution left = solve_point(here, warm, true);
    const PointSolution right = solve_point(there, left.psi, true);
    warm = left.psi;
    curve.psi[i] = left.psi;
    if (!left.converged || !right.converged) continue;
    const double f = fidelity(left.bare, right.bare);
    curve.fs[i] = 2.0 * (1.0 - f) / (dlambda * dlambda);
    curve.valid[i] = true;
  }

  double peak = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (curve.valid[i] && curve.fs[i] > peak) {
      peak = curve.fs[i];
      curve.peak_lambda = lambdas[i];
    }
  }
  curve.fs_renormalized.assign(lambdas.size(), 0.0);
  if (peak > 0.0) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      if (curve.valid[i]) curve.fs_renormalized[i] = curve.fs[i] / peak;
    }
  }
  return curve;
}

std::vector<std::size_t> local_maxima(const FsCurve& curve, double floor) {
  std::vector<std::size_t> idx;
  double top = 0.0;
  for (std::size_t i = 0; i < curve.fs.size(); ++i) {
    if (!curve.valid[i]) continue;
    idx.push_back(i);
    top = std::max(top, curve.fs[i]);
  }
  const double margin = floor * top;
  std::vector<std::size_t> peaks;
  for (std::size_t p = 1; p + 1 < idx.size(); ++p) {
    const double prev = curve.fs[idx[p - 1]];
    const double here = curve.fs[idx[p]];
    const double next = curve.fs[idx[p + 1]];
    if (here > prev + margin && here >= next + margin) peaks.push_back(idx[p]);
  }
  return peaks;
}

}  // namespace dhub
