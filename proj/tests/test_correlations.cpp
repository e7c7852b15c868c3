#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <json.hpp>

#include "correlations.hpp"
#include "doctest.h"
#include "json_io.hpp"

using namespace qcorr;

namespace {

const double kPi = 4.0 * std::atan(1.0);
const double kTheta9 = gamma_to_theta(9.0);

TwoQubitState g_filtered(double p, double theta) {
  return apply_filter(make_filter(FilterKind::g, theta), noisy_state({p, theta})).state;
}

}  // namespace

TEST_CASE("concurrence of pure resource states is sin(2 theta)") {
  for (int j = 1; j <= 12; ++j) {
    const double theta = kPi / 4.0 * j / 12.0;
    CHECK(std::abs(concurrence(pure_state(theta)) - std::sin(2.0 * theta)) < 1e-10);
  }
}

TEST_CASE("concurrence matches the closed family form on a grid") {
  for (int i = 0; i <= 14; ++i) {
    const double p = i / 14.0;
    for (int j = 1; j <= 12; ++j) {
      const double theta = kPi / 4.0 * j / 12.0;
      const double want = std::max(0.0, (3.0 * p - 1.0) * std::sin(theta) * std::cos(theta));
      CHECK(std::abs(concurrence(noisy_state({p, theta})) - want) < 1e-10);
      CHECK(std::abs(concurrence_closed({p, theta}, FilterKind::identity) - want) < 1e-15);
    }
  }
}

TEST_CASE("concurrence landmarks") {
  CHECK(std::abs(concurrence(noisy_state({0.7, kPi / 6.0})) - 1.1 * std::sqrt(3.0) / 4.0) < 1e-12);
  CHECK(concurrence(noisy_state({1.0 / 3.0, kTheta9})) == 0.0);
  CHECK(concurrence(noisy_state({0.2, 0.3})) == 0.0);
  CHECK(std::abs(concurrence(noisy_state({0.8, kPi / 4.0})) - 0.7) < 1e-11);
  const TwoQubitState mixed = TwoQubitState::from_matrix(0.25 * Matrix::identity(4));
  CHECK(concurrence(mixed) == 0.0);
}

TEST_CASE("concurrence of the G-filtered state matches its closed form") {
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    for (double gamma : {1.0, 4.0, 9.0, 25.0}) {
      const double theta = gamma_to_theta(gamma);
      CHECK(std::abs(concurrence(g_filtered(p, theta)) -
                     concurrence_closed({p, theta}, FilterKind::g)) < 1e-10);
    }
  }
  CHECK(std::abs(concurrence_closed({0.5, kTheta9}, FilterKind::g) - 1.0 / 6.0) < 1e-15);
}

TEST_CASE("eigenvalue spectra of rho rho~ match the closed forms, triple degenerate") {
  for (double p : {0.1, 0.5, 0.9}) {
    for (double gamma : {1.0, 9.0}) {
      const double theta = gamma_to_theta(gamma);
      const double s2 = std::sin(2.0 * theta);

      const auto lam = concurrence_lambdas(noisy_state({p, theta}));
      const double l1 = (3.0 * p + 1.0) * (3.0 * p + 1.0) * s2 * s2 / 16.0;
      const double l234 = (1.0 - p) * (1.0 - p) * s2 * s2 / 16.0;
      CHECK(std::abs(lam[0] - l1) < 1e-9);
      for (int k = 1; k < 4; ++k) CHECK(std::abs(lam[k] - l234) < 1e-9);
      CHECK(lam[0] >= lam[1]);
      CHECK(lam[1] >= lam[2]);
      CHECK(lam[2] >= lam[3]);

      const double den = (p + 1.0) / (std::sin(theta) * std::cos(theta)) - 2.0 * p + 2.0;
      const auto lg = concurrence_lambdas(g_filtered(p, theta));
      CHECK(std::abs(lg[0] - std::pow((3.0 * p + 1.0) / den, 2)) < 1e-9);
      for (int k = 1; k < 4; ++k) CHECK(std::abs(lg[k] - std::pow((1.0 - p) / den, 2)) < 1e-9);
    }
  }
}

TEST_CASE("correlation matrix of the family is diag(p sin2t, -p sin2t, p)") {
  for (double p : {0.0, 0.3, 0.8, 1.0}) {
    for (double gamma : {1.0, 2.0, 9.0}) {
      const double theta = gamma_to_theta(gamma);
      const CorrelationMatrix lam = correlation_matrix(noisy_state({p, theta}));
      const double s2 = std::sin(2.0 * theta);
      CHECK(std::abs(lam.t[0][0] - p * s2) < 1e-13);
      CHECK(std::abs(lam.t[1][1] + p * s2) < 1e-13);
      CHECK(std::abs(lam.t[2][2] - p) < 1e-13);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (i != j) CHECK(std::abs(lam.t[i][j]) < 1e-13);
          CHECK(lam.t[i][j] >= -1.0 - 1e-12);
          CHECK(lam.t[i][j] <= 1.0 + 1e-12);
        }
    }
  }
}

TEST_CASE("correlation matrix landmarks") {
  const CorrelationMatrix bell = correlation_matrix(pure_state(kPi / 4.0));
  CHECK(std::abs(bell.t[0][0] - 1.0) < 1e-13);
  CHECK(std::abs(bell.t[1][1] + 1.0) < 1e-13);
  CHECK(std::abs(bell.t[2][2] - 1.0) < 1e-13);

  const CorrelationMatrix mixed =
      correlation_matrix(TwoQubitState::from_matrix(0.25 * Matrix::identity(4)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(mixed.t[i][j]) < 1e-15);

  const CorrelationMatrix g = correlation_matrix(g_filtered(0.8, kTheta9));
  CHECK(std::abs(g.t[0][0] - 0.5) < 1e-12);
  CHECK(std::abs(g.t[1][1] + 0.5) < 1e-12);
  CHECK(std::abs(g.t[2][2] - 0.875) < 1e-12);
}

TEST_CASE("horodecki_S matches 2p sqrt(1+sin^2 2t) on a grid") {
  for (int i = 0; i <= 14; ++i) {
    const double p = i / 14.0;
    for (int j = 1; j <= 12; ++j) {
      const double theta = kPi / 4.0 * j / 12.0;
      const double s2 = std::sin(2.0 * theta);
      const double want = 2.0 * p * std::sqrt(1.0 + s2 * s2);
      CHECK(std::abs(horodecki_S(noisy_state({p, theta})) - want) < 1e-10);
      CHECK(std::abs(horodecki_S_closed({p, theta}, FilterKind::identity) - want) < 1e-14);
    }
  }
}

TEST_CASE("horodecki_S landmarks") {
  CHECK(std::abs(horodecki_S(noisy_state({1.0 / std::sqrt(2.0), kPi / 4.0})) - 2.0) < 1e-12);
  CHECK(std::abs(horodecki_S(noisy_state({0.8, kTheta9})) - 1.8659046063504963) < 1e-12);
  CHECK(std::abs(horodecki_S(g_filtered(0.8, kTheta9)) - 2.0155644370746373) < 1e-12);
  CHECK(std::abs(horodecki_S_closed({0.8, kTheta9}, FilterKind::g) - 2.0155644370746373) <
        1e-14);
  CHECK(std::abs(horodecki_S_closed({0.8, kTheta9}, FilterKind::f) - 1.6 * std::sqrt(2.0)) <
        1e-14);
}

TEST_CASE("horodecki closed form matches the matrix path for the G family") {
  for (double p : {0.0, 0.25, 0.5, 0.8, 1.0}) {
    for (double gamma : {1.0, 4.0, 9.0, 36.0}) {
      const double theta = gamma_to_theta(gamma);
      CHECK(std::abs(horodecki_S(g_filtered(p, theta)) -
                     horodecki_S_closed({p, theta}, FilterKind::g)) < 1e-10);
    }
  }
}

TEST_CASE("chsh with optimal angles reproduces horodecki_S") {
  for (double p : {0.0, 0.3, 0.7, 1.0}) {
    for (double gamma : {1.0, 2.0, 9.0, 25.0}) {
      const double theta = gamma_to_theta(gamma);
      const MeasurementSetting a1 = MeasurementSetting::x_axis();
      const MeasurementSetting a2 = MeasurementSetting::z_axis();

      const auto [f1, f2] = optimal_bob_angles({p, theta}, FilterKind::identity);
      const TwoQubitState st = noisy_state({p, theta});
      CHECK(std::abs(chsh_value(st, a1, a2, MeasurementSetting::plane_angle(f1),
                                MeasurementSetting::plane_angle(f2)) -
                     horodecki_S(st)) < 1e-9);

      const auto [g1, g2] = optimal_bob_angles({p, theta}, FilterKind::g);
      const TwoQubitState gs = g_filtered(p, theta);
      CHECK(std::abs(chsh_value(gs, a1, a2, MeasurementSetting::plane_angle(g1),
                                MeasurementSetting::plane_angle(g2)) -
                     horodecki_S(gs)) < 1e-9);
    }
  }
}

TEST_CASE("optimal bob angle landmarks") {
  const auto [f1, f2] = optimal_bob_angles({0.5, kTheta9}, FilterKind::identity);
  CHECK(std::abs(f1 - std::atan(0.6)) < 1e-14);
  CHECK(std::abs(f2 - (kPi - std::atan(0.6))) < 1e-14);

  const auto [w1, w2] = optimal_bob_angles({0.9, 0.2}, FilterKind::f);
  CHECK(std::abs(w1 - kPi / 4.0) < 1e-14);
  CHECK(std::abs(w2 - 3.0 * kPi / 4.0) < 1e-14);

  const auto [g1, g2] = optimal_bob_angles({0.8, kTheta9}, FilterKind::g);
  CHECK(std::abs(g1 - std::atan(4.0 / 7.0)) < 1e-13);
}

TEST_CASE("chsh never exceeds the horodecki bound, any plane settings") {
  const TwoQubitState st = g_filtered(0.9, gamma_to_theta(4.0));
  const double bound = horodecki_S(st);
  unsigned long long seed = 0x2545F4914F6CDD1Dull;
  auto next = [&seed] {
    seed = seed * 6364136223846793005ull + 1442695040888963407ull;
    return (seed >> 11) * (1.0 / 9007199254740992.0);
  };
  for (int k = 0; k < 40; ++k) {
    const double s = chsh_value(st, MeasurementSetting::plane_angle(next() * 2.0 * kPi),
                                MeasurementSetting::plane_angle(next() * 2.0 * kPi),
                                MeasurementSetting::plane_angle(next() * 2.0 * kPi),
                                MeasurementSetting::plane_angle(next() * 2.0 * kPi));
    CHECK(s <= bound + 1e-9);
    CHECK(std::abs(s) <= 2.0 * std::sqrt(2.0) + 1e-9);
  }
}

TEST_CASE("chsh with numerically maximized angles agrees with horodecki_S") {
  // independent coarse-to-fine 2-angle maximization
  for (double p : {0.5, 0.8}) {
    const TwoQubitState st = g_filtered(p, kTheta9);
    const MeasurementSetting a1 = MeasurementSetting::x_axis();
    const MeasurementSetting a2 = MeasurementSetting::z_axis();
    double best = -10.0, c1 = 0.0, c2 = 0.0;
    double span = kPi;
    for (int i = 0; i < 64; ++i)
      for (int j = 0; j < 64; ++j) {
        const double t1 = -kPi + 2.0 * kPi * i / 63.0;
        const double t2 = -kPi + 2.0 * kPi * j / 63.0;
        const double v = chsh_value(st, a1, a2, MeasurementSetting::plane_angle(t1),
                                    MeasurementSetting::plane_angle(t2));
        if (v > best) best = v, c1 = t1, c2 = t2;
      }
    for (int round = 0; round < 24; ++round) {
      span *= 0.5;
      const double b1 = c1, b2 = c2;
      for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j) {
          const double t1 = b1 + span * i / 2.0;
          const double t2 = b2 + span * j / 2.0;
          const double v = chsh_value(st, a1, a2, MeasurementSetting::plane_angle(t1),
                                      MeasurementSetting::plane_angle(t2));
          if (v > best) best = v, c1 = t1, c2 = t2;
        }
    }
    CHECK(std::abs(best - horodecki_S(st)) < 1e-6);
  }
}

TEST_CASE("chsh landmarks") {
  const TwoQubitState bell = pure_state(kPi / 4.0);
  CHECK(std::abs(chsh_value(bell, MeasurementSetting::x_axis(), MeasurementSetting::z_axis(),
                            MeasurementSetting::plane_angle(kPi / 4.0),
                            MeasurementSetting::plane_angle(3.0 * kPi / 4.0)) -
                 2.0 * std::sqrt(2.0)) < 1e-12);
  // coinciding Bob settings cancel the A2 terms
  const MeasurementSetting b = MeasurementSetting::plane_angle(0.3);
  const double v =
      chsh_value(bell, MeasurementSetting::x_axis(), MeasurementSetting::z_axis(), b, b);
  CHECK(std::abs(v) <= 2.0 + 1e-12);
}

TEST_CASE("steering_T matches (2 + p + p sin2t)/4 on a grid") {
  for (int i = 0; i <= 14; ++i) {
    const double p = i / 14.0;
    for (int j = 1; j <= 12; ++j) {
      const double theta = kPi / 4.0 * j / 12.0;
      const double want = (2.0 + p + p * std::sin(2.0 * theta)) / 4.0;
      CHECK(std::abs(steering_T_default(noisy_state({p, theta})) - want) < 1e-12);
      CHECK(std::abs(steering_T_closed({p, theta}, FilterKind::identity) - want) < 1e-15);
    }
  }
}

TEST_CASE("steering landmarks") {
  CHECK(std::abs(steering_T_default(noisy_state({0.5, kPi / 4.0})) - 0.75) < 1e-14);
  CHECK(std::abs(steering_T_default(noisy_state({0.5, kTheta9})) - 0.7) < 1e-14);
  CHECK(std::abs(steering_T_default(g_filtered(0.5, kTheta9)) - 47.0 / 60.0) < 1e-13);
  CHECK(std::abs(steering_T_default(g_filtered(0.4, kTheta9)) - 0.7556818181818181) < 1e-13);
  const TwoQubitState werner =
      apply_filter(make_filter(FilterKind::f, kTheta9), noisy_state({0.5, kTheta9})).state;
  CHECK(std::abs(steering_T_default(werner) - 0.75) < 1e-13);
  CHECK(std::abs(steering_T_closed({0.5, kTheta9}, FilterKind::f) - 0.75) < 1e-15);
}

TEST_CASE("the printed G steering track sits exactly 1/4 below the operational value") {
  for (double p : {0.1, 0.4, 0.5, 0.8, 1.0}) {
    for (double gamma : {1.0, 2.0, 9.0, 40.0}) {
      const double theta = gamma_to_theta(gamma);
      const double gap =
          steering_T_default(g_filtered(p, theta)) - steering_T_closed({p, theta}, FilterKind::g);
      CHECK(std::abs(gap - 0.25) < 1e-12);
    }
  }
}

TEST_CASE("steering_T symmetric outcome pair on the Werner line") {
  const TwoQubitState st = noisy_state({0.6, kPi / 4.0});
  const MeasurementSetting z = MeasurementSetting::z_axis();
  const MeasurementSetting x = MeasurementSetting::x_axis();
  CHECK(std::abs(steering_T(st, z, z, x, x, 0, 0) - steering_T(st, z, z, x, x, 1, 1)) < 1e-13);
}

TEST_CASE("steering_T raises when the conditioning marginal vanishes") {
  Matrix rho(4, 4);
  rho(3, 3) = 1.0;  // |11><11|, Alice never yields the +1 outcome of sigma_z
  const TwoQubitState st = TwoQubitState::from_matrix(std::move(rho));
  CHECK_THROWS_AS(steering_T_default(st), Error);
  try {
    steering_T_default(st);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::undefined_conditional);
  }
}

TEST_CASE("unsteerability certificate values") {
  CHECK(std::abs(unsteerability_TU({0.0, 0.3}) - std::pow(std::cos(0.6), 2) / 2.0) < 1e-15);
  CHECK(std::abs(unsteerability_TU({1.0, kPi / 4.0}) - 1.0) < 1e-15);
  CHECK(std::abs(unsteerability_TU({0.5, kTheta9}) - 23.0 / 49.0) < 1e-15);
  for (double p : {0.0, 0.25, 0.37, 0.8, 1.0})
    CHECK(std::abs(unsteerability_TU({p, kPi / 4.0}) - p) < 1e-15);
}

TEST_CASE("certified and steering-violating regions never overlap") {
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    for (double gamma : {1.0, 2.0, 4.0, 9.0, 25.0}) {
      const double theta = gamma_to_theta(gamma);
      const bool certified = unsteerability_TU({p, theta}) <= 0.5;
      const bool violating = steering_T_default(noisy_state({p, theta})) > 0.75;
      CHECK(!(certified && violating));
    }
  }
}

TEST_CASE("threshold landmarks at gamma=1") {
  CHECK(std::abs(*threshold_p(Criterion::entangled, 1.0, SolveMethod::closed_form) - 1.0 / 3.0) <
        1e-12);
  CHECK(std::abs(*threshold_p(Criterion::steerable, 1.0, SolveMethod::closed_form) - 0.5) < 1e-12);
  CHECK(std::abs(*threshold_p(Criterion::bell_nonlocal, 1.0, SolveMethod::closed_form) -
                 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(*threshold_p(Criterion::unsteer_certified, 1.0, SolveMethod::closed_form) - 0.5) <
        1e-6);
  CHECK(std::abs(*threshold_p(Criterion::hidden_steer_g, 1.0, SolveMethod::closed_form) - 0.5) <
        1e-6);
  CHECK(std::abs(*threshold_p(Criterion::hidden_bell_g, 1.0, SolveMethod::closed_form) -
                 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("threshold landmarks at gamma=9") {
  CHECK(std::abs(*threshold_p(Criterion::steerable, 9.0, SolveMethod::closed_form) - 0.625) <
        1e-12);
  CHECK(std::abs(*threshold_p(Criterion::bell_nonlocal, 9.0, SolveMethod::closed_form) -
                 0.8574929257125441) < 1e-12);
  CHECK(std::abs(*threshold_p(Criterion::unsteer_certified, 9.0, SolveMethod::bisection) -
                 0.5945016942275303) < 1e-6);
  CHECK(std::abs(*threshold_p(Criterion::hidden_steer_g, 9.0, SolveMethod::closed_form) -
                 0.3801993223490372) < 1e-9);
  CHECK(std::abs(*threshold_p(Criterion::hidden_bell_g, 9.0, SolveMethod::closed_form) -
                 0.7905694150420949) < 1e-12);
}

TEST_CASE("closed-form and bisection thresholds agree") {
  for (double gamma : {1.0, 2.0, 9.0, 25.0}) {
    for (Criterion c : {Criterion::entangled, Criterion::bell_nonlocal, Criterion::steerable,
                        Criterion::unsteer_certified, Criterion::hidden_steer_g,
                        Criterion::hidden_bell_g}) {
      const auto closed = threshold_p(c, gamma, SolveMethod::closed_form);
      const auto bisect = threshold_p(c, gamma, SolveMethod::bisection);
      REQUIRE(closed.has_value());
      REQUIRE(bisect.has_value());
      CHECK(std::abs(*closed - *bisect) < 1e-6);
    }
  }
}

TEST_CASE("unsteer certificate roots at other gamma") {
  CHECK(std::abs(*threshold_p(Criterion::unsteer_certified, 4.0, SolveMethod::bisection) -
                 0.5417312918108796) < 1e-6);
  CHECK(std::abs(*threshold_p(Criterion::unsteer_certified, 25.0, SolveMethod::bisection) -
                 0.6711539355568141) < 1e-6);
}

TEST_CASE("per-gamma threshold ordering") {
  for (double gamma : {1.0, 2.0, 4.0, 9.0, 25.0, 100.0}) {
    const double ent = *threshold_p(Criterion::entangled, gamma, SolveMethod::bisection);
    const double uns = *threshold_p(Criterion::unsteer_certified, gamma, SolveMethod::bisection);
    const double steer = *threshold_p(Criterion::steerable, gamma, SolveMethod::bisection);
    const double bell = *threshold_p(Criterion::bell_nonlocal, gamma, SolveMethod::bisection);
    const double hsg = *threshold_p(Criterion::hidden_steer_g, gamma, SolveMethod::bisection);
    const double hbg = *threshold_p(Criterion::hidden_bell_g, gamma, SolveMethod::bisection);
    CHECK(ent <= uns + 1e-9);
    CHECK(uns <= steer + 1e-9);
    CHECK(steer <= bell + 1e-9);
    CHECK(hsg <= steer + 1e-9);
    CHECK(hbg <= bell + 1e-9);
  }
}

TEST_CASE("threshold_p validates gamma") {
  CHECK_THROWS_AS(threshold_p(Criterion::steerable, 0.5, SolveMethod::closed_form), Error);
}

TEST_CASE("delta_closed is singular at theta=pi/4 and finite elsewhere") {
  CHECK_THROWS_AS(delta_closed(kPi / 4.0), Error);
  CHECK(std::abs(delta_closed(kTheta9) - 0.3801993223490370) < 1e-12);
  CHECK(std::abs(delta_closed(gamma_to_theta(4.0)) - 0.408318915758) < 1e-10);
}

TEST_CASE("measurement setting validation and projectors") {
  CHECK_THROWS_AS(MeasurementSetting::bloch(0.5, 0.5, 0.5), Error);
  const MeasurementSetting n = MeasurementSetting::bloch(0.6, 0.0, 0.8);
  const Matrix sum = n.projector(0) + n.projector(1);
  CHECK(max_abs_diff(sum, Matrix::identity(2)) < 1e-15);
  const Matrix p0 = n.projector(0);
  CHECK(max_abs_diff(p0 * p0, p0) < 1e-15);
  CHECK_THROWS_AS(n.projector(2), Error);
  const MeasurementSetting plane = MeasurementSetting::plane_angle(1.234);
  CHECK(std::abs(plane.x * plane.x + plane.z * plane.z - 1.0) < 1e-15);
  CHECK(plane.y == 0.0);
}

TEST_CASE("report labels across the phase regions") {
  const auto labels_of = [](const CorrelationReport& r) {
    std::vector<std::string> out;
    for (ReportLabel l : r.labels) out.push_back(label_name(l));
    return out;
  };

  const CorrelationReport sep = make_report(noisy_state({0.2, kPi / 4.0}), StateParams{0.2, kPi / 4.0});
  CHECK(labels_of(sep) == std::vector<std::string>{"Separable", "UnsteerCertified"});

  const CorrelationReport ent = make_report(noisy_state({0.5, kTheta9}), StateParams{0.5, kTheta9});
  CHECK(labels_of(ent) == std::vector<std::string>{"Entangled", "UnsteerCertified"});

  const CorrelationReport gap = make_report(noisy_state({0.61, kTheta9}), StateParams{0.61, kTheta9});
  CHECK(labels_of(gap) == std::vector<std::string>{"Entangled", "Indeterminate"});

  const CorrelationReport bell = make_report(noisy_state({0.8, kPi / 4.0}), StateParams{0.8, kPi / 4.0});
  CHECK(labels_of(bell) == std::vector<std::string>{"Entangled", "Steerable", "BellNonlocal"});

  const CorrelationReport no_params = make_report(noisy_state({0.8, kPi / 4.0}), std::nullopt);
  CHECK(!no_params.unsteer_TU.has_value());
  CHECK(labels_of(no_params) == std::vector<std::string>{"Entangled", "Steerable", "BellNonlocal"});
}

TEST_CASE("report values and JSON shape") {
  const StateParams params{0.5, kTheta9};
  const CorrelationReport r = make_report(noisy_state(params), params);
  CHECK(std::abs(r.concurrence - 0.15) < 1e-11);
  CHECK(std::abs(r.steering_T - 0.7) < 1e-13);
  CHECK(std::abs(*r.unsteer_TU - 23.0 / 49.0) < 1e-13);

  const nlohmann::json doc = nlohmann::json::parse(report_to_json(r));
  CHECK(doc["concurrence"].is_number());
  CHECK(doc["bell_S"].is_number());
  CHECK(doc["steering_T"].is_number());
  CHECK(doc["unsteer_TU"].is_number());
  CHECK(doc["labels"].is_array());
  CHECK(doc["labels"][0].get<std::string>() == "Entangled");

  const CorrelationReport bare = make_report(noisy_state(params), std::nullopt);
  const nlohmann::json doc2 = nlohmann::json::parse(report_to_json(bare));
  CHECK(doc2["unsteer_TU"].is_null());
}

TEST_CASE("violating either inequality implies entanglement on the family grid") {
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    for (double gamma : {1.0, 4.0, 9.0}) {
      const double theta = gamma_to_theta(gamma);
      const TwoQubitState st = noisy_state({p, theta});
      const double c = concurrence(st);
      if (horodecki_S(st) > 2.0) CHECK(c > 1e-9);
      if (steering_T_default(st) > 0.75) CHECK(c > 1e-9);
    }
  }
}

TEST_CASE("closed-form track rejects custom filters") {
  CHECK_THROWS_AS(concurrence_closed({0.5, 0.5}, FilterKind::custom), Error);
  CHECK_THROWS_AS(horodecki_S_closed({0.5, 0.5}, FilterKind::custom), Error);
  CHECK_THROWS_AS(steering_T_closed({0.5, 0.5}, FilterKind::custom), Error);
  CHECK_THROWS_AS(optimal_bob_angles({0.5, 0.5}, FilterKind::custom), Error);
}

TEST_CASE("discrepancy report pins the g-track steering offset") {
  const DiscrepancyReport rep = discrepancy_report();
  CHECK(rep.p == 1.0);
  CHECK(rep.theta == doctest::Approx(std::atan(1.0)).epsilon(1e-15));
  CHECK(rep.closed_conditional_x == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.operational_conditional_x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.closed_T == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(rep.operational_T == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.constant_offset == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(rep.concurrence_g_max_abs_diff <= 1e-10);
  CHECK(rep.bell_g_max_abs_diff <= 1e-10);

  const nlohmann::json doc = nlohmann::json::parse(discrepancy_to_json(rep));
  CHECK(doc.at("closed_conditional_x").get<double>() == rep.closed_conditional_x);
  CHECK(doc.at("operational_T").get<double>() == rep.operational_T);
  CHECK(doc.at("constant_offset").get<double>() == rep.constant_offset);
  CHECK(doc.at("concurrence_g_max_abs_diff").get<double>() <= 1e-10);
  CHECK(doc.at("bell_g_max_abs_diff").get<double>() <= 1e-10);
  CHECK(doc.at("evaluation_point").at("p").get<double>() == 1.0);
  CHECK(doc.at("note").is_string());
}
