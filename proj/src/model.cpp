#include "dhub/model.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace dhub {

std::string to_string(CouplingForm form) {
  return form == CouplingForm::RWA ? "rwa" : "crt";
}

CouplingForm coupling_form_from_string(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "crt" || lower == "fullcrt" || lower == "full") return CouplingForm::FullCRT;
  if (lower == "rwa") return CouplingForm::RWA;
  throw InvalidParameter("mode", "expected 'crt' or 'rwa', got '" + name + "'");
}

double ModelParams::effective_scan_max() const {
  if (psi_scan_max > 0.0) return psi_scan_max;
  const double root_n = std::sqrt(static_cast<double>(n_qubits));
  const double scale = 2.0 * root_n * lambda / omega0 + hopping() * root_n / omega0;
  // keep a nonzero window so the scan can still probe ψ when λ = κ = 0
  return std::max(scale, 1e-3);
}

InvalidParameter::InvalidParameter(std::string name, const std::string& reason)
    : std::invalid_argument("invalid parameter '" + name + "': " + reason),
      name_(std::move(name)) {}

const ModelParams& validate(const ModelParams& p) {
  auto require = [](bool ok, const char* name, const char* reason) {
    if (!ok) throw InvalidParameter(name, reason);
  };
  require(std::isfinite(p.omega0) && p.omega0 > 0.0, "omega0", "must be > 0");
  require(std::isfinite(p.epsilon) && p.epsilon > 0.0, "epsilon", "must be > 0");
  require(std::isfinite(p.lambda) && p.lambda >= 0.0, "lambda", "must be >= 0");
  require(std::isfinite(p.kappa) && p.kappa >= 0.0, "kappa", "must be >= 0");
  require(p.z >= 1, "z", "must be a positive integer");
  require(p.n_qubits >= 1, "nqubits", "must be >= 1");
  require(p.n_trunc >= 1, "ntrunc", "must be >= 1");
  require(p.coupling_form == CouplingForm::FullCRT || p.coupling_form == CouplingForm::RWA,
          "mode", "unknown coupling form");
  require(std::isfinite(p.tol_rel) && p.tol_rel > 0.0, "tol", "must be > 0");
  require(std::isfinite(p.mixing) && p.mixing > 0.0 && p.mixing <= 1.0, "mixing",
          "must lie in (0, 1]");
  require(p.max_iters >= 1, "max_iters", "must be >= 1");
  require(p.psi_scan_points >= 2, "psi_scan_points", "must be >= 2");
  require(std::isfinite(p.psi_scan_max), "psi_scan_max", "must be finite");
  return p;
}

double ladder_plus(double j, double m) {
  const double v = j * (j + 1.0) - m * (m + 1.0);
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

AngularMomentumOps build_angular_ops(int n_qubits) {
  if (n_qubits < 1) throw InvalidParameter("nqubits", "must be >= 1");
  AngularMomentumOps ops;
  ops.j = 0.5 * n_qubits;
  const int dim = n_qubits + 1;
  ops.jz_diag.resize(dim);
  ops.jplus_offdiag.resize(dim);
  for (int n = 0; n < dim; ++n) {
    const double m = n - ops.j;
    ops.jz_diag[n] = m;
    ops.jplus_offdiag[n] = n + 1 < dim ? ladder_plus(ops.j, m) : 0.0;
  }
  return ops;
}

Eigen::MatrixXd AngularMomentumOps::jz() const { return jz_diag.asDiagonal(); }

Eigen::MatrixXd AngularMomentumOps::jplus() const {
  Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(dim(), dim());
  for (int n = 0; n + 1 < dim(); ++n) jp(n + 1, n) = jplus_offdiag[n];
  return jp;
}

Eigen::MatrixXd AngularMomentumOps::jminus() const { return jplus().transpose(); }

Eigen::MatrixXd AngularMomentumOps::jx() const { return 0.5 * (jplus() + jminus()); }

Eigen::MatrixXd AngularMomentumOps::quarter_turn_y() const {
  // -i (pi/2) J_y = -(pi/4)(J+ - J-)
  const Eigen::MatrixXd generator = -(std::numbers::pi / 4.0) * (jplus() - jminus());
  return generator.exp();
}

}  // namespace dhub
