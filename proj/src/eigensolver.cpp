#include "dhub/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace dhub {
namespace {

double residual_of(const SparseMatrix& h, const Eigen::VectorXd& v, double value) {
  return (h * v - value * v).norm();
}

Eigen::VectorXd seeded_noise(Eigen::Index n) {
  std::mt19937_64 rng(0x5eed1234u);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v.normalized();
}

void check_accept(double residual, double scale, const EigenOptions& options) {
  if (!(residual <= options.accept * scale)) {
    throw EigenFailure("eigen residual " + std::to_string(residual) + " exceeds " +
                       std::to_string(options.accept * scale));
  }
}

Eigenpair dense_lowest(const Eigen::MatrixXd& h, const Eigen::VectorXd* guess,
                       const EigenOptions& options) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw EigenFailure("dense symmetric eigensolver failed");
  const auto& values = es.eigenvalues();
  Eigenpair out;
  out.value = values[0];
  out.vector = es.eigenvectors().col(0);

  if (guess != nullptr && values.size() > 1) {
    Eigen::Index deg = 1;
    while (deg < values.size() &&
           values[deg] - values[0] < options.degeneracy * (1.0 + std::abs(values[0]))) {
      ++deg;
    }
    if (deg > 1) {
      const auto space = es.eigenvectors().leftCols(deg);
      Eigen::VectorXd projected = space * (space.transpose() * *guess);
      if (projected.norm() > 1e-8) out.vector = projected.normalized();
    }
  }
  out.residual = (h * out.vector - out.value * out.vector).norm();
  return out;
}

Eigenpair lanczos_lowest(const SparseMatrix& h, Eigen::VectorXd x, double scale,
                         const EigenOptions& options) {
  const Eigen::Index n = h.rows();
  const Eigen::Index m = std::min<Eigen::Index>(options.krylov_dim, n);
  Eigen::MatrixXd basis(n, m + 1);
  Eigen::VectorXd alpha(m), beta(m);
  Eigen::VectorXd w(n);

  Eigenpair best;
  best.residual = std::numeric_limits<double>::infinity();
  std::vector<double> history;
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    basis.col(0) = x.normalized();
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
      w.noalias() = h * basis.col(j);
      alpha[j] = basis.col(j).dot(w);
      // full reorthogonalization, applied twice
      for (int pass = 0; pass < 2; ++pass) {
        const auto q = basis.leftCols(j + 1);
        w.noalias() -= q * (q.transpose() * w);
      }
      k = j + 1;
      beta[j] = w.norm();
      if (beta[j] < 1e-14 * scale) break;
      basis.col(j + 1) = w / beta[j];
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    if (k == 1) {
      x = basis.col(0);
    } else {
      tri.computeFromTridiagonal(alpha.head(k), beta.head(k - 1), Eigen::ComputeEigenvectors);
      x = basis.leftCols(k) * tri.eigenvectors().col(0);
    }
    x.normalize();
    const double value = x.dot(h * x);
    const double res = residual_of(h, x, value);
    if (res < best.residual) {
      best.value = value;
      best.vector = x;
      best.residual = res;
    }
    if (res <= options.tolerance * scale) break;
    // give up when ten restarts have not halved the residual
    history.push_back(res);
    if (history.size() > 10 && res > 0.5 * history[history.size() - 11]) break;
  }
  return best;
}

}  // namespace

double infinity_norm(const SparseMatrix& h) {
  double norm = 0.0;
  for (Eigen::Index r = 0; r < h.outerSize(); ++r) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(h, r); it; ++it) row += std::abs(it.value());
    norm = std::max(norm, row);
  }
  return norm;
}

Eigenpair lowest_eigenpair(const Eigen::MatrixXd& h, const EigenOptions& options) {
  if (h.rows() != h.cols() || h.rows() == 0) throw EigenFailure("matrix must be square and non-empty");
  if (!h.allFinite()) throw EigenFailure("matrix has non-finite entries");
  Eigenpair out = dense_lowest(h, nullptr, options);
  const double scale = std::max(h.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
  check_accept(out.residual, scale, options);
  return out;
}

Eigenpair lowest_eigenpair(const SparseMatrix& h, const Eigen::VectorXd* guess,
                           const EigenOptions& options) {
  if (h.rows() != h.cols() || h.rows() == 0) throw EigenFailure("matrix must be square and non-empty");
  const double scale = std::max(infinity_norm(h), 1e-300);
  if (!std::isfinite(scale)) throw EigenFailure("matrix has non-finite entries");

  Eigenpair out;
  if (h.rows() <= options.dense_limit) {
    out = dense_lowest(Eigen::MatrixXd(h), guess, options);
  } else {
    // a small seeded admixture keeps every symmetry sector in the Krylov space
    Eigen::VectorXd start = seeded_noise(h.rows());
    if (guess != nullptr && guess->size() == h.rows() && guess->norm() > 0.0) {
      start = guess->normalized() + 1e-2 * start;
    }
    out = lanczos_lowest(h, start, scale, options);
    // clustered low spectra (level crossings) stall single-vector restarts
    if (out.residual > options.tolerance * scale && h.rows() <= options.dense_fallback_limit) {
      out = dense_lowest(Eigen::MatrixXd(h), guess, options);
    }
  }
  check_accept(out.residual, scale, options);
  return out;
}

}  // namespace dhub
