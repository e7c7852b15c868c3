#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "json_io.hpp"
#include "states.hpp"

using namespace qcorr;

namespace {

// Independent construction: assemble p|psi><psi| + (1-p) rho_A (x) I/2 from
// Kronecker products instead of the closed-form entries used by the library.
Matrix assembled_noisy(double p, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix psi(4, 1);
  psi(0, 0) = c;
  psi(3, 0) = s;
  Matrix proj = psi * psi.adjoint();
  Matrix rho_a = Matrix::from_rows({{c * c, 0}, {0, s * s}});
  Matrix half_i = 0.5 * Matrix::identity(2);
  return p * proj + (1.0 - p) * kron(rho_a, half_i);
}

}  // namespace

TEST_CASE("noisy_state matches the assembled definition") {
  for (double p : {0.0, 0.3, 0.5, 0.8, 1.0}) {
    for (double gamma : {1.0, 2.0, 9.0, 40.0}) {
      const double theta = gamma_to_theta(gamma);
      CHECK(max_abs_diff(noisy_state({p, theta}).matrix(), assembled_noisy(p, theta)) < 1e-15);
    }
  }
}

TEST_CASE("noisy_state(0.5, gamma=9) has the expected entries") {
  const TwoQubitState st = noisy_state({0.5, gamma_to_theta(9.0)});
  const Matrix& rho = st.matrix();
  const double want_diag[4] = {0.675, 0.225, 0.025, 0.075};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(rho(i, i).real() - want_diag[i]) < 1e-12);
  CHECK(std::abs(rho(0, 3).real() - 0.15) < 1e-12);
  CHECK(std::abs(rho(3, 0).real() - 0.15) < 1e-12);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(rho(i, j).imag()) == 0.0);
      const bool structural = (i == j) || (i == 0 && j == 3) || (i == 3 && j == 0);
      if (!structural) CHECK(std::abs(rho(i, j)) == 0.0);
    }

  Matrix bob = partial_trace_A(st);
  CHECK(std::abs(bob(0, 0).real() - 0.7) < 1e-12);
  CHECK(std::abs(bob(1, 1).real() - 0.3) < 1e-12);
  CHECK(std::abs(bob(0, 1)) < 1e-15);

  Matrix alice = partial_trace_B(st);
  CHECK(std::abs(alice(0, 0).real() - 0.9) < 1e-12);
  CHECK(std::abs(alice(1, 1).real() - 0.1) < 1e-12);
}

TEST_CASE("partial_trace_B returns diag(cos^2, sin^2) for the whole family") {
  for (double p : {0.0, 0.25, 0.6, 1.0}) {
    for (double gamma : {1.0, 3.0, 9.0, 100.0}) {
      const double theta = gamma_to_theta(gamma);
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      Matrix alice = partial_trace_B(noisy_state({p, theta}));
      CHECK(std::abs(alice(0, 0).real() - c * c) < 1e-15);
      CHECK(std::abs(alice(1, 1).real() - s * s) < 1e-15);
      CHECK(std::abs(alice(0, 1)) == 0.0);
    }
  }
}

TEST_CASE("at theta=pi/4 the family is Werner: p Bell + (1-p) I/4") {
  const double pi4 = std::atan(1.0);
  for (double p : {0.0, 0.5, 0.8, 1.0}) {
    Matrix bell(4, 4);
    bell(0, 0) = bell(3, 3) = bell(0, 3) = bell(3, 0) = 0.5;
    Matrix want = p * bell + (1.0 - p) * (0.25 * Matrix::identity(4));
    CHECK(max_abs_diff(noisy_state({p, pi4}).matrix(), want) < 1e-12);
  }
}

TEST_CASE("gamma/theta conversions") {
  const double th9 = gamma_to_theta(9.0);
  CHECK(std::abs(std::tan(th9) - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(std::sin(2.0 * th9) - 0.6) < 1e-15);
  CHECK(std::abs(std::cos(2.0 * th9) - 0.8) < 1e-15);
  CHECK(std::abs(gamma_to_theta(1.0) - std::atan(1.0)) < 1e-15);
  for (double gamma : {1.0, 1.5, 9.0, 64.0, 100.0})
    CHECK(std::abs(theta_to_gamma(gamma_to_theta(gamma)) - gamma) < 1e-12 * gamma);
  CHECK_THROWS_AS(gamma_to_theta(0.5), Error);
  CHECK_THROWS_AS(theta_to_gamma(1.0), Error);  // > pi/4
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(noisy_state({1.2, 0.3}), Error);
  CHECK_THROWS_AS(noisy_state({-0.1, 0.3}), Error);
  CHECK_THROWS_AS(noisy_state({0.5, 0.0}), Error);
  CHECK_THROWS_AS(noisy_state({0.5, 1.0}), Error);
  CHECK_THROWS_AS(pure_state(0.0), Error);
  CHECK_NOTHROW(noisy_state({0.5, std::atan(1.0)}));
}

TEST_CASE("from_matrix validates physicality") {
  Matrix not_herm = Matrix::identity(4);
  not_herm *= 0.25;
  not_herm(0, 1) = cplx(0.0, 1e-3);
  CHECK_THROWS_AS(TwoQubitState::from_matrix(not_herm), Error);

  Matrix bad_trace = Matrix::identity(4);
  CHECK_THROWS_AS(TwoQubitState::from_matrix(bad_trace), Error);

  Matrix neg(4, 4);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  neg(2, 2) = 0.0;
  neg(3, 3) = 0.0;
  CHECK_THROWS_AS(TwoQubitState::from_matrix(neg), Error);

  CHECK_NOTHROW(TwoQubitState::from_matrix(0.25 * Matrix::identity(4)));
}

TEST_CASE("state JSON round trip preserves entries and provenance") {
  const StateParams params{0.73, gamma_to_theta(5.0)};
  const TwoQubitState st = noisy_state(params);
  const std::string text = state_to_json(st, params);
  LoadedState back = state_from_json(text);
  CHECK(max_abs_diff(back.state.matrix(), st.matrix()) == 0.0);
  REQUIRE(back.params.has_value());
  CHECK(back.params->p == params.p);
  CHECK(back.params->theta == params.theta);

  LoadedState bare = state_from_json(state_to_json(st));
  CHECK(!bare.params.has_value());
  CHECK(max_abs_diff(bare.state.matrix(), st.matrix()) == 0.0);
}

TEST_CASE("state JSON rejects malformed documents") {
  CHECK_THROWS_AS(state_from_json("not json"), Error);
  CHECK_THROWS_AS(state_from_json("{\"re\": [1, 2], \"im\": [3]}"), Error);
  std::string text = state_to_json(noisy_state({0.5, 0.3}));
  text.replace(text.find("0.") + 1, 1, "9");  // corrupt one entry
  CHECK_THROWS_AS(state_from_json(text), Error);
}
