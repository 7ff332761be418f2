// Displaced Fock (extended coherent state) basis.
//
// For ladder index n the photon mode is expanded in number states of
// A_n = a + g_n, i.e. |k>_{A_n} = D(-g_n)|k> with D(x) = exp(x a^dag - x a).
// Neighbouring ladder blocks differ by the constant shift g = 2 lambda/(omega0 sqrt N),
// and their overlaps are the Franck-Condon factors
//
//   <l|_{A_{n+1}} |k>_{A_n} = (-1)^k D_{l,k}(g),
//   D_{l,k}(g) = e^{-g^2/2} sum_r (-1)^r sqrt(l! k!) g^{l+k-2r} / ((l-r)! (k-r)! r!).

#pragma once

#include "dhub/model.hpp"
#include "dhub/state.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace dhub {

struct DisplacedBasis {
  Eigen::VectorXd g_per_m;
  int n_trunc = 0;
  double psi = 0.0;
};

struct OverlapMatrix {
  Eigen::MatrixXd d;
  double g = 0.0;
};

class NormLoss : public std::runtime_error {
 public:
  explicit NormLoss(double deficit);
  double deficit() const { return deficit_; }

 private:
  double deficit_;
};

// g_m = 2 lambda m / (omega0 sqrt N) - z kappa psi / omega0
double displacement(const ModelParams& params, double psi, double m);

DisplacedBasis make_displaced_basis(const ModelParams& params, double psi);

// Shift between neighbouring ladder blocks, 2 lambda / (omega0 sqrt N).
double ladder_shift(const ModelParams& params);

// Matrix elements <l|D(alpha)|k> for l < rows, k < cols. Column 0 and row 0 are
// evaluated in log-factorial form, the rest by the two-term ladder recurrence
//   sqrt(k+1) M_{l,k+1} = sqrt(l) M_{l-1,k} - alpha M_{l,k}.
Eigen::MatrixXd displacement_operator(double alpha, int rows, int cols);

// D_{l,k}(g) for 0 <= l,k <= n_trunc.
OverlapMatrix overlap_matrix(double g, int n_trunc);

// Bare truncation that captures a displaced state built with these shifts.
int default_bare_truncation(const Eigen::VectorXd& g_per_m, int n_trunc);

// Rotates back to the laboratory frame and re-expands every ladder block in
// bare Fock states 0..n_trunc_out. Throws NormLoss when the retained norm drops
// below 1 - 1e-4.
BareState to_bare_basis(const GroundState& state, int n_trunc_out);
BareState to_bare_basis(const GroundState& state);

}  // namespace dhub
