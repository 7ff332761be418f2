// Mean-field ground state of a single Dicke cavity in the hopping field z kappa psi.
//
// FullCRT runs in the spin-rotated frame, where every ladder block m carries its
// own displaced photon mode and the Hamiltonian is block tridiagonal:
//
//   diagonal  omega0 (l - g_m^2) + z kappa psi^2
//   m, m+1    -(eps/2) j+_m <l|_{A_m} |k>_{A_{m+1}}
//
// RWA has no such rotation trick and is solved directly in the bare product
// basis, which doubles as the independent check on the displaced solver.

#pragma once

#include "dhub/basis.hpp"
#include "dhub/eigensolver.hpp"
#include "dhub/model.hpp"
#include "dhub/state.hpp"

#include <optional>
#include <stdexcept>
#include <variant>

namespace dhub {

// Block-tridiagonal displaced Hamiltonian. The off-diagonal blocks depend only
// on lambda, so one instance serves every psi of a self-consistent solve.
class DisplacedHamiltonian {
 public:
  explicit DisplacedHamiltonian(const ModelParams& params);

  const SparseMatrix& at(double psi);
  const ModelParams& params() const { return params_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  ModelParams params_;
  SparseMatrix matrix_;
  std::vector<Eigen::Index> diagonal_slots_;
};

SparseMatrix assemble_displaced_hamiltonian(const ModelParams& params, double psi);

// Laboratory-frame H_MF over |j,m> (x) |k>, k <= n_bare, for either coupling form.
SparseMatrix bare_hamiltonian(const ModelParams& params, double psi, int n_bare);

// E(psi) and c_{n,l} at a fixed field; the returned psi is the input psi.
GroundState solve_at_fixed_psi(const ModelParams& params, double psi,
                               const Eigen::VectorXd* guess = nullptr);

// |<a>| of a displaced-basis state.
double measure_psi(const GroundState& state);
double signed_order_parameter(const GroundState& state);

// Bare truncation used by the oracle: Ntr + ceil(max g_m^2) + 10.
int oracle_truncation(const ModelParams& params, double psi);

// Lowest eigenpair of bare_hamiltonian. n_bare < 0 selects oracle_truncation.
BareState ground_state_oracle(const ModelParams& params, double psi, int n_bare = -1,
                              const Eigen::VectorXd* reference = nullptr);

struct RwaGroundState {
  BareState state;
  double psi = 0.0;
  int iterations = 0;
  bool converged = false;
};

class NotConverged : public std::runtime_error {
 public:
  using Last = std::variant<GroundState, RwaGroundState>;
  explicit NotConverged(Last last);
  const Last& last() const { return last_; }

 private:
  Last last_;
};

// Two-stage protocol: scan psi on [0, psi_scan_max] for the global minimum of
// E(psi), polish the best two scan minima with Brent, then iterate
// psi <- (1 - mixing) psi + mixing |<a>| until E and psi are stable. A warm psi
// replaces the scan by a local search around it, falling back to the scan
// when the local search fails. Throws NotConverged.
GroundState self_consistent_ground_state(const ModelParams& params,
                                         std::optional<double> warm_psi = std::nullopt);

RwaGroundState self_consistent_rwa(const ModelParams& params,
                                   std::optional<double> warm_psi = std::nullopt);

// Coupling-form independent summary of one self-consistent solve.
struct PointSolution {
  double energy = 0.0;
  double psi = 0.0;
  double photon_number = 0.0;
  int iterations = 0;
  bool converged = false;
  BareState bare;  // filled when requested
  std::optional<GroundState> displaced;
};

// Dispatches on coupling_form. Non-convergence is retried once with half the
// mixing and then reported through `converged`, never thrown.
PointSolution solve_point(const ModelParams& params, std::optional<double> warm_psi = std::nullopt,
                          bool want_bare = false);

// Relative ground-energy change when the truncation is raised by `extra`.
double truncation_drift(const ModelParams& params, int extra = 5);

}  // namespace dhub
