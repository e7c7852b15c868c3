#include "states.hpp"

#include <cmath>

namespace qcorr {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void validate_params(const StateParams& params) {
  require(std::isfinite(params.p) && params.p >= 0.0 && params.p <= 1.0, ErrorCode::domain,
          "p must lie in [0, 1]");
  require(std::isfinite(params.theta) && params.theta > 0.0 && params.theta <= kPi / 4.0 + 1e-12,
          ErrorCode::domain, "theta must lie in (0, pi/4]");
}

double gamma_to_theta(double gamma) {
  require(std::isfinite(gamma) && gamma >= 1.0, ErrorCode::domain, "gamma must be >= 1");
  return std::atan(1.0 / std::sqrt(gamma));
}

double theta_to_gamma(double theta) {
  require(std::isfinite(theta) && theta > 0.0 && theta <= kPi / 4.0 + 1e-12, ErrorCode::domain,
          "theta must lie in (0, pi/4]");
  const double t = std::tan(theta);
  return 1.0 / (t * t);
}

TwoQubitState TwoQubitState::from_matrix(Matrix rho) {
  require(rho.rows() == 4 && rho.cols() == 4, ErrorCode::domain, "density matrix must be 4x4");
  require(rho.is_finite(), ErrorCode::domain, "non-finite density matrix entry");
  require(is_hermitian(rho, 1e-10), ErrorCode::not_hermitian,
          "density matrix is not Hermitian within 1e-10");
  require(std::abs(rho.trace() - cplx(1.0)) <= 1e-10, ErrorCode::domain,
          "density matrix trace must be 1 within 1e-10");
  const auto vals = hermitian_eigenvalues(rho);
  require(vals.back() >= -1e-9, ErrorCode::not_psd, "density matrix has a negative eigenvalue");
  return TwoQubitState(std::move(rho));
}

TwoQubitState pure_state(double theta) {
  validate_params({1.0, theta});
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix rho(4, 4);
  rho(0, 0) = c * c;
  rho(0, 3) = c * s;
  rho(3, 0) = c * s;
  rho(3, 3) = s * s;
  return TwoQubitState::from_matrix(std::move(rho));
}

TwoQubitState noisy_state(const StateParams& params) {
  validate_params(params);
  const double p = params.p;
  const double c = std::cos(params.theta);
  const double s = std::sin(params.theta);
  Matrix rho(4, 4);
  rho(0, 0) = p * c * c + (1.0 - p) * c * c / 2.0;
  rho(1, 1) = (1.0 - p) * c * c / 2.0;
  rho(2, 2) = (1.0 - p) * s * s / 2.0;
  rho(3, 3) = p * s * s + (1.0 - p) * s * s / 2.0;
  rho(0, 3) = p * c * s;
  rho(3, 0) = p * c * s;
  return TwoQubitState::from_matrix(std::move(rho));
}

Matrix partial_trace_A(const TwoQubitState& state) {
  const Matrix& rho = state.matrix();
  Matrix out(2, 2);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) out(k, l) = rho(0 * 2 + k, 0 * 2 + l) + rho(1 * 2 + k, 1 * 2 + l);
  return out;
}

Matrix partial_trace_B(const TwoQubitState& state) {
  const Matrix& rho = state.matrix();
  Matrix out(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = rho(i * 2 + 0, j * 2 + 0) + rho(i * 2 + 1, j * 2 + 1);
  return out;
}

}  // namespace qcorr
