#pragma once

#include <Eigen/Dense>

namespace dhub {

// Ground state in the displaced Fock basis of the spin-rotated frame.
// Row n is the ladder index (m = n - j), column l the displaced Fock level of
// the mode A_n = a + g_n.
struct GroundState {
  double energy = 0.0;
  double psi = 0.0;
  Eigen::MatrixXd coeffs;
  Eigen::VectorXd g_per_m;
  int iterations = 0;
  bool converged = false;

  int n_qubits() const { return static_cast<int>(coeffs.rows()) - 1; }
  int n_trunc() const { return static_cast<int>(coeffs.cols()) - 1; }
};

// State over |j,m> (x) |k>_a in the laboratory frame, rows m ascending,
// columns bare photon number k.
struct BareState {
  Eigen::MatrixXd coeffs;
  double energy = 0.0;

  int n_qubits() const { return static_cast<int>(coeffs.rows()) - 1; }
  int n_trunc() const { return static_cast<int>(coeffs.cols()) - 1; }
};

}  // namespace dhub
