// Mean-field Dicke-Hubbard model parameters and collective spin operators.
//
// Energies are measured in units of the cavity frequency omega0. The collective
// spin j = N/2 is represented in the |j,m> ladder with m ascending, so ladder
// index n = m + j runs over 0..N.

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace dhub {

enum class CouplingForm { FullCRT, RWA };

std::string to_string(CouplingForm form);
CouplingForm coupling_form_from_string(const std::string& name);

struct ModelParams {
  double epsilon = 1.0;
  double omega0 = 1.0;
  double lambda = 0.0;
  double kappa = 0.0;
  int z = 3;
  int n_qubits = 2;
  int n_trunc = 40;
  CouplingForm coupling_form = CouplingForm::FullCRT;
  double tol_rel = 1e-5;
  // <= 0 selects the default 2 sqrt(N) lambda/omega0 + z kappa sqrt(N)/omega0.
  double psi_scan_max = -1.0;
  int psi_scan_points = 41;
  double mixing = 1.0;
  int max_iters = 200;

  double j() const { return 0.5 * n_qubits; }
  int ladder_size() const { return n_qubits + 1; }
  double hopping() const { return z * kappa; }
  double effective_scan_max() const;
};

class InvalidParameter : public std::invalid_argument {
 public:
  InvalidParameter(std::string name, const std::string& reason);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Throws InvalidParameter on the first violated invariant.
const ModelParams& validate(const ModelParams& params);

struct AngularMomentumOps {
  double j = 0.0;
  Eigen::VectorXd jz_diag;        // m = -j .. j
  Eigen::VectorXd jplus_offdiag;  // j+_m for m = -j .. j (last entry is 0)

  int dim() const { return static_cast<int>(jz_diag.size()); }
  Eigen::MatrixXd jz() const;
  Eigen::MatrixXd jplus() const;
  Eigen::MatrixXd jminus() const;
  Eigen::MatrixXd jx() const;
  // exp(-i pi/2 J_y), real orthogonal. Maps eps J_z -> -eps J_x and J_x -> J_z
  // under R^T (.) R.
  Eigen::MatrixXd quarter_turn_y() const;
};

AngularMomentumOps build_angular_ops(int n_qubits);

// sqrt(j(j+1) - m(m+1))
double ladder_plus(double j, double m);

}  // namespace dhub
