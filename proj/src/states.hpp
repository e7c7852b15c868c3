#pragma once

// Two-qubit density matrices for the partially entangled family
//   rho(p, theta) = p |psi><psi| + (1 - p) rho_A (x) I/2,
//   |psi> = cos(theta)|00> + sin(theta)|11>,  rho_A = Tr_B |psi><psi|.
// Basis order is |00>, |01>, |10>, |11>, row-major.

#include <optional>

#include "qmat.hpp"

namespace qcorr {

struct StateParams {
  double p = 0.0;      // mixing weight, [0, 1]
  double theta = 0.0;  // (0, pi/4]; gamma = cot(theta)^2 >= 1
};

void validate_params(const StateParams& params);

// gamma = cot(theta)^2, so theta = arctan(1/sqrt(gamma)). Requires gamma >= 1.
double gamma_to_theta(double gamma);
double theta_to_gamma(double theta);

class TwoQubitState {
 public:
  // Validates Hermiticity (1e-10), unit trace (1e-10) and positivity
  // (eigenvalues >= -1e-9).
  static TwoQubitState from_matrix(Matrix rho);

  const Matrix& matrix() const { return rho_; }

 private:
  explicit TwoQubitState(Matrix rho) : rho_(std::move(rho)) {}
  Matrix rho_;
};

TwoQubitState pure_state(double theta);
TwoQubitState noisy_state(const StateParams& params);

// Reduced 2x2 density matrix of the remaining subsystem.
Matrix partial_trace_A(const TwoQubitState& state);  // keeps B
Matrix partial_trace_B(const TwoQubitState& state);  // keeps A

}  // namespace qcorr
