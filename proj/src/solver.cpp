#include "dhub/solver.hpp"

#include "dhub/observables.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace dhub {
namespace {

using RowMajorMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

Eigen::MatrixXd unflatten(const Eigen::VectorXd& v, int rows, int cols) {
  return RowMajorMap(v.data(), rows, cols);
}

Eigen::VectorXd flatten(const Eigen::MatrixXd& m) {
  Eigen::VectorXd v(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r) v.segment(r * m.cols(), m.cols()) = m.row(r).transpose();
  return v;
}

double bare_order_parameter(const BareState& state) {
  const auto& c = state.coeffs;
  double sum = 0.0;
  for (Eigen::Index k = 0; k + 1 < c.cols(); ++k) {
    sum += std::sqrt(static_cast<double>(k + 1)) * c.col(k).dot(c.col(k + 1));
  }
  return sum;
}

// -- inner solvers: psi -> (E(psi), |<a>|, state) -------------------------

struct CrtInner {
  struct Sample {
    double energy;
    double order;
    GroundState state;
  };

  explicit CrtInner(const ModelParams& p) : ham(p) {}

  Sample evaluate(double psi) {
    const SparseMatrix& h = ham.at(psi);
    Eigenpair ep = lowest_eigenpair(h, last.size() ? &last : nullptr);
    last = ep.vector;
    const ModelParams& p = ham.params();
    GroundState gs;
    gs.energy = ep.value;
    gs.psi = psi;
    gs.coeffs = unflatten(ep.vector, p.ladder_size(), p.n_trunc + 1);
    gs.g_per_m = make_displaced_basis(p, psi).g_per_m;
    const double order = measure_psi(gs);
    return {ep.value, order, std::move(gs)};
  }

  DisplacedHamiltonian ham;
  Eigen::VectorXd last;
};

struct RwaInner {
  struct Sample {
    double energy;
    double order;
    BareState state;
  };

  explicit RwaInner(const ModelParams& p) : params(p) {}

  Sample evaluate(double psi) {
    BareState st = ground_state_oracle(params, psi, params.n_trunc, last.size() ? &last : nullptr);
    last = flatten(st.coeffs);
    const double order = std::abs(bare_order_parameter(st));
    return {st.energy, order, std::move(st)};
  }

  ModelParams params;
  Eigen::VectorXd last;
};

// -- shared two-stage protocol ----------------------------------------------

template <class Inner>
class ConsistencyLoop {
 public:
  using Sample = typename Inner::Sample;

  struct Outcome {
    Sample sample;
    double psi;
    int iterations;
    bool converged;
  };

  ConsistencyLoop(const ModelParams& p, Inner& inner)
      : p_(p),
        inner_(inner),
        scan_max_(p.effective_scan_max()),
        step_(scan_max_ / (p.psi_scan_points - 1)) {}

  Outcome run(std::optional<double> warm) {
    if (warm && p_.hopping() > 0.0) {
      if (auto out = try_warm(std::max(0.0, *warm))) return *std::move(out);
    }
    return cold();
  }

 private:
  double energy_at(double psi) { return inner_.evaluate(psi).energy; }

  double polish(double lo, double hi) {
    if (p_.hopping() == 0.0 || hi <= lo) return lo;
    std::uintmax_t max_iter = 100;
    const auto best = boost::math::tools::brent_find_minima(
        [this](double x) { return energy_at(x); }, lo, hi, 30, max_iter);
    return best.first;
  }

  Outcome iterate(double psi) {
    Sample cur = inner_.evaluate(psi);
    double mix = p_.mixing;
    int rises = 0;
    int streak = 0;
    for (int it = 1; it <= p_.max_iters; ++it) {
      const double next_psi = (1.0 - mix) * psi + mix * cur.order;
      Sample next = inner_.evaluate(next_psi);
      const double d_energy = std::abs(next.energy - cur.energy) /
                              std::max(std::abs(next.energy), 1e-300);
      const double d_psi = std::abs(next.order - next_psi) / std::max(1.0, next_psi);
      if (next.energy > cur.energy + 1e-13 * (1.0 + std::abs(cur.energy))) {
        if (++rises >= 2) {
          mix *= 0.5;
          rises = 0;
        }
      }
      psi = next_psi;
      cur = std::move(next);
      streak = (d_energy < p_.tol_rel && d_psi < p_.tol_rel) ? streak + 1 : 0;
      if (streak >= 2) return {std::move(cur), psi, it, true};
    }
    return {std::move(cur), psi, p_.max_iters, false};
  }

  std::optional<Outcome> try_warm(double warm) {
    if (warm < p_.tol_rel) {
      // psi = 0 is always a fixed point; keep it only while it is stable
      const double probe = 1e-2 * step_;
      if (inner_.evaluate(probe).order > probe) return std::nullopt;
      Outcome out = iterate(0.0);
      if (out.converged) return out;
      return std::nullopt;
    }
    const double lo = std::max(0.0, warm - 2.0 * step_);
    const double hi = warm + 2.0 * step_;
    const double x = polish(lo, hi);
    const double edge = 1e-3 * step_;
    if ((lo > 0.0 && x - lo < edge) || hi - x < edge) return std::nullopt;
    Outcome out = iterate(x);
    if (out.converged) return out;
    return std::nullopt;
  }

  Outcome cold() {
    const int points = p_.psi_scan_points;
    std::vector<double> psis(points), energies(points);
    for (int i = 0; i < points; ++i) {
      psis[i] = step_ * i;
      energies[i] = energy_at(psis[i]);
    }

    int best = 0;
    for (int i = 1; i < points; ++i) {
      if (energies[i] < energies[best] - 1e-12 * (1.0 + std::abs(energies[best]))) best = i;
    }
    std::vector<int> candidates{best};
    int second = -1;
    for (int i = 0; i < points; ++i) {
      if (i == best) continue;
      const bool left = i == 0 || energies[i] < energies[i - 1];
      const bool right = i == points - 1 || energies[i] < energies[i + 1];
      if (left && right && (second < 0 || energies[i] < energies[second])) second = i;
    }
    if (second >= 0) candidates.push_back(second);

    std::optional<Outcome> kept;
    for (int c : candidates) {
      const double lo = psis[std::max(c - 1, 0)];
      const double hi = psis[std::min(c + 1, points - 1)];
      Outcome out = iterate(polish(lo, hi));
      if (!kept || (out.converged && !kept->converged) ||
          (out.converged == kept->converged && out.sample.energy < kept->sample.energy)) {
        kept = std::move(out);
      }
    }
    return *std::move(kept);
  }

  const ModelParams& p_;
  Inner& inner_;
  double scan_max_;
  double step_;
};

}  // namespace

// -- Hamiltonians --------------------------------------------------------------

DisplacedHamiltonian::DisplacedHamiltonian(const ModelParams& params) : params_(params) {
  validate(params_);
  const int ladder = params_.ladder_size();
  const int levels = params_.n_trunc + 1;
  const int dim = ladder * levels;
  const AngularMomentumOps ops = build_angular_ops(params_.n_qubits);
  const OverlapMatrix overlap = overlap_matrix(ladder_shift(params_), params_.n_trunc);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(dim) + 2u * static_cast<size_t>(ladder - 1) * levels * levels);
  for (int r = 0; r < dim; ++r) triplets.emplace_back(r, r, 0.0);
  for (int n = 0; n + 1 < ladder; ++n) {
    const double hop = -0.5 * params_.epsilon * ops.jplus_offdiag[n];
    for (int l = 0; l < levels; ++l) {
      const double sign = (l % 2 == 0) ? 1.0 : -1.0;
      for (int k = 0; k < levels; ++k) {
        // <l|_{A_n} |k>_{A_{n+1}} = (-1)^l D_{l,k}(g)
        const double v = hop * sign * overlap.d(l, k);
        if (v == 0.0) continue;
        triplets.emplace_back(n * levels + l, (n + 1) * levels + k, v);
        triplets.emplace_back((n + 1) * levels + k, n * levels + l, v);
      }
    }
  }
  matrix_.resize(dim, dim);
  matrix_.setFromTriplets(triplets.begin(), triplets.end());
  matrix_.makeCompressed();

  diagonal_slots_.resize(dim);
  for (int r = 0; r < dim; ++r) {
    for (Eigen::Index p = matrix_.outerIndexPtr()[r]; p < matrix_.outerIndexPtr()[r + 1]; ++p) {
      if (matrix_.innerIndexPtr()[p] == r) {
        diagonal_slots_[r] = p;
        break;
      }
    }
  }
}

const SparseMatrix& DisplacedHamiltonian::at(double psi) {
  const DisplacedBasis basis = make_displaced_basis(params_, psi);
  const int levels = params_.n_trunc + 1;
  const double constant = params_.hopping() * psi * psi;
  double* values = matrix_.valuePtr();
  for (int n = 0; n < params_.ladder_size(); ++n) {
    const double g = basis.g_per_m[n];
    for (int l = 0; l < levels; ++l) {
      values[diagonal_slots_[n * levels + l]] = params_.omega0 * (l - g * g) + constant;
    }
  }
  return matrix_;
}

SparseMatrix assemble_displaced_hamiltonian(const ModelParams& params, double psi) {
  if (params.coupling_form != CouplingForm::FullCRT) {
    throw InvalidParameter("mode", "the displaced basis requires the full coupling");
  }
  DisplacedHamiltonian ham(params);
  return ham.at(psi);
}

SparseMatrix bare_hamiltonian(const ModelParams& params, double psi, int n_bare) {
  validate(params);
  const int ladder = params.ladder_size();
  const int levels = n_bare + 1;
  const AngularMomentumOps ops = build_angular_ops(params.n_qubits);
  const double coupling = params.lambda / std::sqrt(static_cast<double>(params.n_qubits));
  const double field = -params.hopping() * psi;
  const bool crt = params.coupling_form == CouplingForm::FullCRT;
  auto index = [levels](int n, int k) { return n * levels + k; };

  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<size_t>(ladder) * levels * 5);
  auto pair = [&t](int r, int c, double v) {
    if (v == 0.0) return;
    t.emplace_back(r, c, v);
    t.emplace_back(c, r, v);
  };
  for (int n = 0; n < ladder; ++n) {
    const double m = ops.jz_diag[n];
    for (int k = 0; k < levels; ++k) {
      t.emplace_back(index(n, k), index(n, k),
                     params.epsilon * m + params.omega0 * k + params.hopping() * psi * psi);
      if (k + 1 < levels) pair(index(n, k), index(n, k + 1), field * std::sqrt(k + 1.0));
      if (n + 1 < ladder) {
        const double jp = coupling * ops.jplus_offdiag[n];
        // J+ a
        if (k >= 1) pair(index(n + 1, k - 1), index(n, k), jp * std::sqrt(static_cast<double>(k)));
        // J+ a^dag
        if (crt && k + 1 < levels) pair(index(n + 1, k + 1), index(n, k), jp * std::sqrt(k + 1.0));
      }
    }
  }
  SparseMatrix h(ladder * levels, ladder * levels);
  h.setFromTriplets(t.begin(), t.end());
  h.makeCompressed();
  return h;
}

// -- fixed-psi solves ------------------------------------------------------------

GroundState solve_at_fixed_psi(const ModelParams& params, double psi, const Eigen::VectorXd* guess) {
  if (params.coupling_form != CouplingForm::FullCRT) {
    throw InvalidParameter("mode", "the displaced basis requires the full coupling");
  }
  DisplacedHamiltonian ham(params);
  const Eigenpair ep = lowest_eigenpair(ham.at(psi), guess);
  GroundState gs;
  gs.energy = ep.value;
  gs.psi = psi;
  gs.coeffs = unflatten(ep.vector, params.ladder_size(), params.n_trunc + 1);
  gs.g_per_m = make_displaced_basis(params, psi).g_per_m;
  gs.converged = false;
  return gs;
}

double signed_order_parameter(const GroundState& state) {
  const auto& c = state.coeffs;
  double sum = 0.0;
  for (Eigen::Index n = 0; n < c.rows(); ++n) {
    double hop = 0.0;
    for (Eigen::Index k = 0; k + 1 < c.cols(); ++k) {
      hop += std::sqrt(static_cast<double>(k + 1)) * c(n, k) * c(n, k + 1);
    }
    sum += hop - state.g_per_m[n] * c.row(n).squaredNorm();
  }
  return sum;
}

double measure_psi(const GroundState& state) { return std::abs(signed_order_parameter(state)); }

int oracle_truncation(const ModelParams& params, double psi) {
  return default_bare_truncation(make_displaced_basis(params, psi).g_per_m, params.n_trunc);
}

BareState ground_state_oracle(const ModelParams& params, double psi, int n_bare,
                              const Eigen::VectorXd* reference) {
  if (n_bare < 0) n_bare = oracle_truncation(params, psi);
  const SparseMatrix h = bare_hamiltonian(params, psi, n_bare);
  const Eigenpair ep = lowest_eigenpair(h, reference);
  BareState out;
  out.energy = ep.value;
  out.coeffs = unflatten(ep.vector, params.ladder_size(), n_bare + 1);
  return out;
}

// -- self-consistency ------------------------------------------------------------

NotConverged::NotConverged(Last last)
    : std::runtime_error("self-consistent iteration did not converge"), last_(std::move(last)) {}

GroundState self_consistent_ground_state(const ModelParams& params, std::optional<double> warm_psi) {
  validate(params);
  if (params.coupling_form != CouplingForm::FullCRT) {
    throw InvalidParameter("mode", "use self_consistent_rwa for the rotating-wave coupling");
  }
  CrtInner inner(params);
  ConsistencyLoop<CrtInner> loop(params, inner);
  auto out = loop.run(warm_psi);
  GroundState gs = std::move(out.sample.state);
  gs.iterations = out.iterations;
  gs.converged = out.converged;
  if (!gs.converged) throw NotConverged(std::move(gs));
  return gs;
}

RwaGroundState self_consistent_rwa(const ModelParams& params, std::optional<double> warm_psi) {
  validate(params);
  if (params.coupling_form != CouplingForm::RWA) {
    throw InvalidParameter("mode", "self_consistent_rwa requires the rotating-wave coupling");
  }
  RwaInner inner(params);
  ConsistencyLoop<RwaInner> loop(params, inner);
  auto out = loop.run(warm_psi);
  RwaGroundState gs;
  gs.state = std::move(out.sample.state);
  gs.psi = out.psi;
  gs.iterations = out.iterations;
  gs.converged = out.converged;
  if (!gs.converged) throw NotConverged(std::move(gs));
  return gs;
}

namespace {

PointSolution summarize(const GroundState& gs, bool want_bare) {
  PointSolution s;
  s.energy = gs.energy;
  s.psi = gs.psi;
  s.photon_number = photon_number(gs);
  s.iterations = gs.iterations;
  s.converged = gs.converged;
  if (want_bare) s.bare = to_bare_basis(gs);
  s.displaced = gs;
  return s;
}

PointSolution summarize(const RwaGroundState& gs, bool) {
  PointSolution s;
  s.energy = gs.state.energy;
  s.psi = gs.psi;
  s.photon_number = photon_number(gs.state);
  s.iterations = gs.iterations;
  s.converged = gs.converged;
  s.bare = gs.state;
  return s;
}

template <class Solve>
PointSolution solve_with_retry(const ModelParams& params, std::optional<double> warm,
                               bool want_bare, Solve solve) {
  try {
    return summarize(solve(params, warm), want_bare);
  } catch (const NotConverged&) {
  }
  ModelParams gentler = params;
  gentler.mixing *= 0.5;
  try {
    return summarize(solve(gentler, std::nullopt), want_bare);
  } catch (const NotConverged& e) {
    return std::visit([&](const auto& last) { return summarize(last, want_bare); }, e.last());
  }
}

}  // namespace

PointSolution solve_point(const ModelParams& params, std::optional<double> warm_psi, bool want_bare) {
  if (params.coupling_form == CouplingForm::RWA) {
    return solve_with_retry(params, warm_psi, want_bare,
                            [](const ModelParams& p, std::optional<double> w) { return self_consistent_rwa(p, w); });
  }
  return solve_with_retry(params, warm_psi, want_bare, [](const ModelParams& p, std::optional<double> w) {
    return self_consistent_ground_state(p, w);
  });
}

double truncation_drift(const ModelParams& params, int extra) {
  ModelParams larger = params;
  larger.n_trunc += extra;
  const double base = solve_point(params).energy;
  const double more = solve_point(larger).energy;
  return std::abs(more - base) / std::max(std::abs(base), 1e-300);
}

}  // namespace dhub
