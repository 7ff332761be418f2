// Lowest eigenpair of real symmetric matrices.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <optional>
#include <stdexcept>

namespace dhub {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct Eigenpair {
  double value = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;  // ||H v - E v||
};

class EigenFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EigenOptions {
  // Relative residual target, measured against the infinity norm of H.
  double tolerance = 1e-11;
  // Failure threshold; results above it raise EigenFailure.
  double accept = 1e-8;
  // Matrices up to this size are diagonalized densely.
  int dense_limit = 160;
  // Lanczos results that miss `tolerance` are redone densely up to this size.
  int dense_fallback_limit = 4000;
  int krylov_dim = 60;
  int max_restarts = 200;
  // Two lowest eigenvalues closer than this are treated as degenerate.
  double degeneracy = 1e-9;
};

Eigenpair lowest_eigenpair(const Eigen::MatrixXd& h, const EigenOptions& options = {});

// Uses the dense path below dense_limit and restarted Lanczos above it. When
// `guess` is given it seeds Lanczos; in the dense path it selects, inside a
// degenerate ground space, the vector of maximal overlap with `guess`.
Eigenpair lowest_eigenpair(const SparseMatrix& h, const Eigen::VectorXd* guess = nullptr,
                           const EigenOptions& options = {});

double infinity_norm(const SparseMatrix& h);

}  // namespace dhub
