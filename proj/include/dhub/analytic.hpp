// Closed-form limits: the two-qubit rotating-wave spectrum in the Mott phase and
// the Holstein-Primakoff energy surface of the large-N mean-field model.

#pragma once

#include "dhub/model.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace dhub {

class NotApplicable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnboundedEnergy : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// lambda_c^0 = omega0, lambda_c^n = (omega0/2)(sqrt(2n+1) + sqrt(2n-1)).
std::vector<double> rwa_lobe_boundaries(double omega0, int n_max = 10);
// Checks resonance and N = 2 first.
std::vector<double> rwa_lobe_boundaries(const ModelParams& params, int n_max = 10);

struct RwaLevel {
  enum class Branch { Zero, Plus, Minus };
  Branch branch;
  int excitation;  // n
  double energy;

  std::string label() const;
};

struct RwaSpectrumN2 {
  std::vector<RwaLevel> levels;  // ascending energy
  const RwaLevel& ground() const { return levels.front(); }
};

RwaSpectrumN2 rwa_spectrum_n2(double omega0, double lambda, int n_max = 20);
RwaSpectrumN2 rwa_spectrum_n2(const ModelParams& params, int n_max = 20);

// E_G/N = (omega0 - z kappa) alpha^2 - 4 lambda alpha beta sqrt(1-beta^2) + eps (beta^2 - 1/2)
double hp_energy(double alpha, double beta, const ModelParams& params);

struct HpResult {
  double alpha = 0.0;
  double beta = 0.0;
  double energy_per_site = 0.0;
  double lambda_c = 0.0;
  // Independent 2-D minimization of hp_energy and its disagreement with the
  // stationary point.
  double alpha_numeric = 0.0;
  double beta_numeric = 0.0;
  double discrepancy = 0.0;
};

double hp_critical_coupling(const ModelParams& params);

// Stationary point of hp_energy, beta^2 = max(0, (1 - lambda_c^2/lambda^2)/2) and
// alpha = 2 lambda beta sqrt(1-beta^2) / (omega0 - z kappa), cross-checked against
// a numerical minimization; beyond 1e-6 disagreement the numerical point wins.
// Returns the beta >= 0 branch. Throws UnboundedEnergy when z kappa >= omega0.
HpResult hp_minimize(const ModelParams& params);

}  // namespace dhub
