#include "dhub/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dhub {

NormLoss::NormLoss(double deficit)
    : std::runtime_error("bare-basis conversion lost norm " + std::to_string(deficit) +
                         "; increase the output truncation"),
      deficit_(deficit) {}

double displacement(const ModelParams& params, double psi, double m) {
  const double j = params.j();
  if (m < -j - 1e-12 || m > j + 1e-12 || std::abs(std::round(m + j) - (m + j)) > 1e-12) {
    throw std::out_of_range("ladder index m=" + std::to_string(m) + " outside [-j, j]");
  }
  const double root_n = std::sqrt(static_cast<double>(params.n_qubits));
  return 2.0 * params.lambda * m / (params.omega0 * root_n) -
         params.hopping() * psi / params.omega0;
}

double ladder_shift(const ModelParams& params) {
  return 2.0 * params.lambda / (params.omega0 * std::sqrt(static_cast<double>(params.n_qubits)));
}

DisplacedBasis make_displaced_basis(const ModelParams& params, double psi) {
  DisplacedBasis basis;
  basis.n_trunc = params.n_trunc;
  basis.psi = psi;
  basis.g_per_m.resize(params.ladder_size());
  for (int n = 0; n < params.ladder_size(); ++n) {
    basis.g_per_m[n] = displacement(params, psi, n - params.j());
  }
  return basis;
}

Eigen::MatrixXd displacement_operator(double alpha, int rows, int cols) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);
  if (rows == 0 || cols == 0) return out;

  const double half_sq = 0.5 * alpha * alpha;
  const double log_abs = alpha != 0.0 ? std::log(std::abs(alpha)) : 0.0;
  auto edge = [&](int n, bool flip) {
    // e^{-a^2/2} (+-a)^n / sqrt(n!)
    if (n == 0) return std::exp(-half_sq);
    if (alpha == 0.0) return 0.0;
    const double mag = std::exp(-half_sq + n * log_abs - 0.5 * std::lgamma(n + 1.0));
    const bool negative = (alpha < 0.0) != flip ? (n % 2 == 1) : false;
    return negative ? -mag : mag;
  };
  for (int l = 0; l < rows; ++l) out(l, 0) = edge(l, false);
  for (int k = 1; k < cols; ++k) out(0, k) = edge(k, true);

  for (int k = 0; k + 1 < cols; ++k) {
    const double inv = 1.0 / std::sqrt(k + 1.0);
    for (int l = 1; l < rows; ++l) {
      out(l, k + 1) = (std::sqrt(static_cast<double>(l)) * out(l - 1, k) - alpha * out(l, k)) * inv;
    }
  }
  return out;
}

OverlapMatrix overlap_matrix(double g, int n_trunc) {
  OverlapMatrix om;
  om.g = g;
  om.d = displacement_operator(g, n_trunc + 1, n_trunc + 1);
  for (int k = 1; k <= n_trunc; k += 2) om.d.col(k) *= -1.0;
  return om;
}

int default_bare_truncation(const Eigen::VectorXd& g_per_m, int n_trunc) {
  const double g_max = g_per_m.size() ? g_per_m.cwiseAbs().maxCoeff() : 0.0;
  return n_trunc + static_cast<int>(std::ceil(g_max * g_max)) + 10;
}

BareState to_bare_basis(const GroundState& state, int n_trunc_out) {
  const int ladder = static_cast<int>(state.coeffs.rows());
  const int cols = static_cast<int>(state.coeffs.cols());
  Eigen::MatrixXd rotated(ladder, n_trunc_out + 1);
  for (int n = 0; n < ladder; ++n) {
    // |l>_{A_n} = D(-g_n)|l>
    const Eigen::MatrixXd shift = displacement_operator(-state.g_per_m[n], n_trunc_out + 1, cols);
    rotated.row(n) = (shift * state.coeffs.row(n).transpose()).transpose();
  }
  const Eigen::MatrixXd turn = build_angular_ops(ladder - 1).quarter_turn_y();

  BareState bare;
  bare.coeffs = turn * rotated;
  bare.energy = state.energy;
  const double deficit = 1.0 - bare.coeffs.squaredNorm();
  if (deficit > 1e-4) throw NormLoss(deficit);
  return bare;
}

BareState to_bare_basis(const GroundState& state) {
  return to_bare_basis(state, default_bare_truncation(state.g_per_m, state.n_trunc()));
}

}  // namespace dhub
