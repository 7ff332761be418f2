#pragma once

#include "dhub/model.hpp"
#include "dhub/state.hpp"

#include <stdexcept>
#include <vector>

namespace dhub {

double photon_number(const GroundState& state);
double photon_number(const BareState& state);

// <exp(i pi (J_z + a^dag a + N/2))> in the laboratory frame; +1 for |0>|j,-j>.
double parity_expectation(const BareState& state);

class TruncationMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |<a|b>|^2 after zero-padding both states to the larger bare truncation.
double fidelity(const BareState& a, const BareState& b);

struct FsCurve {
  std::vector<double> lambdas;
  std::vector<double> fs;
  std::vector<double> fs_renormalized;
  std::vector<double> psi;  // order parameter at each lambda
  std::vector<bool> valid;
  double peak_lambda = 0.0;
};

// FS(lambda) = 2 [1 - F(lambda)] / dlambda^2 with F the ground-state fidelity
// between lambda and lambda + dlambda, both solved self-consistently.
// Unconverged points are marked invalid and excluded from the normalization.
FsCurve fidelity_susceptibility_curve(const ModelParams& params, const std::vector<double>& lambdas,
                                      double dlambda = 1e-3);

// Interior local maxima of the valid part of the curve that rise above both
// neighbours by more than floor * max(fs); the floor absorbs round-off where
// FS is flat.
std::vector<std::size_t> local_maxima(const FsCurve& curve, double floor = 1e-6);

}  // namespace dhub
