#include "dhub/analytic.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>

namespace dhub {
namespace {

void require_resonant_pair(const ModelParams& p) {
  if (p.n_qubits != 2) throw NotApplicable("closed-form Mott lobes need N = 2");
  if (std::abs(p.epsilon - p.omega0) > 1e-12 * p.omega0) {
    throw NotApplicable("closed-form Mott lobes need resonance (epsilon = omega0)");
  }
}

}  // namespace

std::vector<double> rwa_lobe_boundaries(double omega0, int n_max) {
  if (!(omega0 > 0.0)) throw InvalidParameter("omega0", "must be > 0");
  if (n_max < 0) throw InvalidParameter("n_max", "must be >= 0");
  std::vector<double> out;
  out.reserve(n_max + 1);
  out.push_back(omega0);
  for (int n = 1; n <= n_max; ++n) {
    out.push_back(0.5 * omega0 * (std::sqrt(2.0 * n + 1.0) + std::sqrt(2.0 * n - 1.0)));
  }
  return out;
}

std::vector<double> rwa_lobe_boundaries(const ModelParams& params, int n_max) {
  require_resonant_pair(params);
  return rwa_lobe_boundaries(params.omega0, n_max);
}

std::string RwaLevel::label() const {
  const char* b = branch == Branch::Zero ? "0" : (branch == Branch::Plus ? "+" : "-");
  return std::string("|") + b + "," + std::to_string(excitation) + ">";
}

RwaSpectrumN2 rwa_spectrum_n2(double omega0, double lambda, int n_max) {
  if (!(omega0 > 0.0)) throw InvalidParameter("omega0", "must be > 0");
  if (n_max < 0) throw InvalidParameter("n_max", "must be >= 0");
  using B = RwaLevel::Branch;
  RwaSpectrumN2 s;
  s.levels.push_back({B::Zero, 0, -omega0});
  s.levels.push_back({B::Plus, 0, lambda});
  s.levels.push_back({B::Minus, 0, -lambda});
  for (int n = 1; n <= n_max; ++n) {
    const double split = lambda * std::sqrt(2.0 * n + 1.0);
    s.levels.push_back({B::Zero, n, omega0 * n});
    s.levels.push_back({B::Plus, n, omega0 * n + split});
    s.levels.push_back({B::Minus, n, omega0 * n - split});
  }
  std::stable_sort(s.levels.begin(), s.levels.end(),
                   [](const RwaLevel& a, const RwaLevel& b) { return a.energy < b.energy; });
  return s;
}

RwaSpectrumN2 rwa_spectrum_n2(const ModelParams& params, int n_max) {
  require_resonant_pair(params);
  return rwa_spectrum_n2(params.omega0, params.lambda, n_max);
}

double hp_energy(double alpha, double beta, const ModelParams& p) {
  if (!(std::abs(beta) <= 1.0)) throw DomainError("|beta| must not exceed 1");
  return (p.omega0 - p.hopping()) * alpha * alpha -
         4.0 * p.lambda * alpha * beta * std::sqrt(1.0 - beta * beta) +
         p.epsilon * (beta * beta - 0.5);
}

double hp_critical_coupling(const ModelParams& p) {
  const double stiffness = p.omega0 - p.hopping();
  if (stiffness <= 0.0) throw UnboundedEnergy("z kappa >= omega0: photon energy unbounded below");
  return 0.5 * std::sqrt(stiffness * p.epsilon);
}

HpResult hp_minimize(const ModelParams& p) {
  HpResult r;
  r.lambda_c = hp_critical_coupling(p);
  const double stiffness = p.omega0 - p.hopping();

  if (p.lambda > r.lambda_c) {
    const double ratio = r.lambda_c / p.lambda;
    r.beta = std::sqrt(0.5 * (1.0 - ratio * ratio));
    r.alpha = 2.0 * p.lambda * r.beta * std::sqrt(1.0 - r.beta * r.beta) / stiffness;
  }
  r.energy_per_site = hp_energy(r.alpha, r.beta, p);

  // Independent check: coarse grid over (alpha, beta >= 0), then nested Brent.
  const double alpha_span = 2.0 * p.lambda / stiffness + 1.0;
  const int grid = 200;
  double best_a = 0.0, best_b = 0.0, best_e = hp_energy(0.0, 0.0, p);
  for (int i = 0; i <= grid; ++i) {
    const double a = -alpha_span + 2.0 * alpha_span * i / grid;
    for (int k = 0; k <= grid; ++k) {
      const double b = static_cast<double>(k) / grid;
      const double e = hp_energy(a, b, p);
      if (e < best_e) {
        best_e = e;
        best_a = a;
        best_b = b;
      }
    }
  }
  const double da = 2.0 * alpha_span / grid;
  const double db = 1.0 / grid;
  auto inner = [&](double b) {
    std::uintmax_t iters = 200;
    return boost::math::tools::brent_find_minima([&](double a) { return hp_energy(a, b, p); },
                                                 best_a - 2.0 * da, best_a + 2.0 * da, 50, iters);
  };
  std::uintmax_t iters = 200;
  const auto outer = boost::math::tools::brent_find_minima(
      [&](double b) { return inner(b).second; }, std::max(0.0, best_b - 2.0 * db),
      std::min(1.0, best_b + 2.0 * db), 50, iters);
  r.beta_numeric = outer.first;
  r.alpha_numeric = inner(outer.first).first;
  const double numeric_energy = outer.second;

  r.discrepancy = r.energy_per_site - numeric_energy;
  if (r.discrepancy > 1e-6) {
    std::cerr << "warning: closed-form HP minimizer lies " << r.discrepancy
              << " above the numerical minimum; using the numerical point\n";
    r.alpha = r.alpha_numeric;
    r.beta = r.beta_numeric;
    r.energy_per_site = numeric_energy;
  }
  return r;
}

}  // namespace dhub
