#include "correlations.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qcorr {

namespace {

constexpr double kLabelEps = 1e-12;

double trace_product_real(const Matrix& a, const Matrix& b) {
  cplx sum = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) sum += a(i, j) * b(j, i);
  return sum.real();
}

Matrix spin_flip(const Matrix& rho) {
  const Matrix yy = kron(pauli_y(), pauli_y());
  return yy * rho.conjugate() * yy;
}

// PSD square root with a relative rank cutoff. Zeroing eigenvalues below
// lmax * 1e-12 keeps sqrt from amplifying O(eps) noise on exact-zero
// eigenvalues into O(sqrt(eps)) contributions to the singular values.
Matrix psd_sqrt_ranktol(const Matrix& m) {
  const EigResult eig = hermitian_eig(m);
  const double lmax = std::max(0.0, eig.values.front());
  const double cut = lmax * 1e-12;
  const int n = m.rows();
  Matrix out(n, n);
  for (int k = 0; k < n; ++k) {
    const double lam = eig.values[k];
    if (lam <= cut) continue;
    const double r = std::sqrt(lam);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(i, j) += r * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return out;
}

// Singular values of W = sqrt(rho~) sqrt(rho), descending. These are the
// square roots of the eigenvalues of rho rho~, obtained through the
// Hermitian embedding [[0, W+], [W, 0]] whose spectrum is +-sigma_i.
std::array<double, 4> root_lambdas(const TwoQubitState& state) {
  const Matrix& rho = state.matrix();
  const Matrix w = psd_sqrt_ranktol(spin_flip(rho)) * psd_sqrt_ranktol(rho);
  Matrix h(8, 8);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      h(i, 4 + j) = std::conj(w(j, i));
      h(4 + i, j) = w(i, j);
    }
  }
  const auto vals = hermitian_eigenvalues(h);
  std::array<double, 4> sigma;
  for (int k = 0; k < 4; ++k) sigma[k] = std::max(0.0, vals[k]);
  return sigma;
}

double csc_sec(double theta) { return 1.0 / (std::sin(theta) * std::cos(theta)); }

// Closed Pauli correlation diagonals (Lambda_xx, Lambda_zz) per family.
std::pair<double, double> closed_lambda_xz(const StateParams& params, FilterKind filtered) {
  const double p = params.p;
  switch (filtered) {
    case FilterKind::identity:
      return {p * std::sin(2.0 * params.theta), p};
    case FilterKind::f:
      return {p, p};
    case FilterKind::g: {
      const double u = csc_sec(params.theta);
      const double den = (p + 1.0) * u - 2.0 * p + 2.0;
      return {4.0 * p / den, ((p + 1.0) * u + 2.0 * p - 2.0) / den};
    }
    case FilterKind::custom:
      break;
  }
  raise(ErrorCode::domain, "closed forms cover identity, f and g filters only");
}

std::optional<double> bisect_threshold(const std::function<bool(double)>& holds) {
  bool sample[11];
  for (int i = 0; i <= 10; ++i) sample[i] = holds(i / 10.0);
  for (int i = 0; i < 10; ++i)
    require(!(sample[i] && !sample[i + 1]), ErrorCode::domain,
            "threshold criterion is not monotone in p");
  if (!sample[10]) return std::nullopt;
  if (sample[0]) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

MeasurementSetting MeasurementSetting::bloch(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  require(std::isfinite(norm) && std::abs(norm - 1.0) <= 1e-12, ErrorCode::domain,
          "measurement Bloch vector must be unit length");
  return {x, y, z};
}

MeasurementSetting MeasurementSetting::plane_angle(double phi) {
  require(std::isfinite(phi), ErrorCode::domain, "measurement angle must be finite");
  return {std::sin(phi), 0.0, std::cos(phi)};
}

Matrix MeasurementSetting::observable() const {
  return x * pauli_x() + y * pauli_y() + z * pauli_z();
}

Matrix MeasurementSetting::projector(int outcome) const {
  require(outcome == 0 || outcome == 1, ErrorCode::domain, "outcome must be 0 or 1");
  const double sign = outcome == 0 ? 0.5 : -0.5;
  return 0.5 * Matrix::identity(2) + sign * observable();
}

double concurrence(const TwoQubitState& state) {
  const auto s = root_lambdas(state);
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

std::array<double, 4> concurrence_lambdas(const TwoQubitState& state) {
  const auto s = root_lambdas(state);
  return {s[0] * s[0], s[1] * s[1], s[2] * s[2], s[3] * s[3]};
}

CorrelationMatrix correlation_matrix(const TwoQubitState& state) {
  const Matrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
  CorrelationMatrix out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.t[i][j] = trace_product_real(kron(paulis[i], paulis[j]), state.matrix());
  return out;
}

double horodecki_S(const TwoQubitState& state) {
  const CorrelationMatrix lam = correlation_matrix(state);
  Matrix m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += lam.t[k][i] * lam.t[k][j];
      m(i, j) = acc;
    }
  const auto vals = hermitian_eigenvalues(m);
  return 2.0 * std::sqrt(std::max(0.0, vals[0]) + std::max(0.0, vals[1]));
}

double chsh_value(const TwoQubitState& state, const MeasurementSetting& a1,
                  const MeasurementSetting& a2, const MeasurementSetting& b1,
                  const MeasurementSetting& b2) {
  const Matrix& rho = state.matrix();
  const auto corr = [&](const MeasurementSetting& a, const MeasurementSetting& b) {
    return trace_product_real(kron(a.observable(), b.observable()), rho);
  };
  return corr(a1, b1) + corr(a1, b2) + corr(a2, b1) - corr(a2, b2);
}

std::pair<double, double> optimal_bob_angles(const StateParams& params, FilterKind filtered) {
  validate_params(params);
  const auto [lxx, lzz] = closed_lambda_xz(params, filtered);
  const double phi1 = std::atan2(lxx, lzz);
  return {phi1, std::atan(1.0) * 4.0 - phi1};
}

double steering_T(const TwoQubitState& state, const MeasurementSetting& a1,
                  const MeasurementSetting& b1, const MeasurementSetting& a2,
                  const MeasurementSetting& b2, int outcome_a, int outcome_b) {
  const Matrix& rho = state.matrix();
  const Matrix id = Matrix::identity(2);
  double total = 0.0;
  const std::pair<const MeasurementSetting&, const MeasurementSetting&> pairs[2] = {{a1, b1},
                                                                                    {a2, b2}};
  for (const auto& [a, b] : pairs) {
    const Matrix pa = a.projector(outcome_a);
    const double marginal = trace_product_real(kron(pa, id), rho);
    require(marginal > 1e-12, ErrorCode::undefined_conditional,
            "conditioning outcome has vanishing probability");
    const double joint = trace_product_real(kron(pa, b.projector(outcome_b)), rho);
    total += joint / marginal;
  }
  return 0.5 * total;
}

double steering_T_default(const TwoQubitState& state) {
  return steering_T(state, MeasurementSetting::z_axis(), MeasurementSetting::z_axis(),
                    MeasurementSetting::x_axis(), MeasurementSetting::x_axis(), 0, 0);
}

double unsteerability_TU(const StateParams& params) {
  validate_params(params);
  const double c2 = std::cos(2.0 * params.theta);
  const double den = 1.0 - params.p * params.p * c2 * c2;
  require(den > 1e-15, ErrorCode::domain, "certificate undefined: p |cos 2 theta| too close to 1");
  const double a = (1.0 - params.p * params.p) * c2 / den;
  const double b = params.p * (1.0 - c2 * c2) / den;
  return 0.5 * (a * a + 2.0 * std::abs(b));
}

double concurrence_closed(const StateParams& params, FilterKind filtered) {
  validate_params(params);
  const double p = params.p;
  switch (filtered) {
    case FilterKind::identity:
      return std::max(0.0, (3.0 * p - 1.0) * std::sin(params.theta) * std::cos(params.theta));
    case FilterKind::f:
      return std::max(0.0, (3.0 * p - 1.0) / 2.0);
    case FilterKind::g: {
      const double den = (p + 1.0) * csc_sec(params.theta) - 2.0 * p + 2.0;
      return std::max(0.0, (6.0 * p - 2.0) / den);
    }
    case FilterKind::custom:
      break;
  }
  raise(ErrorCode::domain, "closed forms cover identity, f and g filters only");
}

double horodecki_S_closed(const StateParams& params, FilterKind filtered) {
  validate_params(params);
  const auto [lxx, lzz] = closed_lambda_xz(params, filtered);
  return 2.0 * std::sqrt(lxx * lxx + lzz * lzz);
}

double steering_T_closed(const StateParams& params, FilterKind filtered) {
  validate_params(params);
  const double p = params.p;
  switch (filtered) {
    case FilterKind::identity:
      return (2.0 + p + p * std::sin(2.0 * params.theta)) / 4.0;
    case FilterKind::f:
      return (1.0 + p) / 2.0;
    case FilterKind::g: {
      const double den = (p + 1.0) * csc_sec(params.theta) - 2.0 * p + 2.0;
      return 1.0 / (2.0 - 2.0 * (p - 1.0) * std::tan(params.theta) / (p + 1.0)) + p / den;
    }
    case FilterKind::custom:
      break;
  }
  raise(ErrorCode::domain, "closed forms cover identity, f and g filters only");
}

double delta_closed(double theta) {
  validate_params({1.0, theta});
  const double s = std::sin(theta), c = std::cos(theta);
  const double cot = c / s;
  const double num = cot - c * c * (cot + 2.0) - 7.0 * s * c +
                     std::sqrt(6.0 * std::sin(2.0 * theta) + 5.0 * std::sin(4.0 * theta) +
                               6.0 * std::cos(2.0 * theta) + 10.0);
  const double den = 2.0 * (-2.0 * std::sin(2.0 * theta) + std::cos(2.0 * theta) + 2.0);
  require(std::abs(den) > 1e-9, ErrorCode::domain,
          "closed boundary is singular at theta = pi/4; use the bisection solver");
  return num / den;
}

std::optional<double> threshold_p(Criterion criterion, double gamma, SolveMethod method) {
  const double theta = gamma_to_theta(gamma);
  const double s2 = std::sin(2.0 * theta);

  if (method == SolveMethod::closed_form) {
    switch (criterion) {
      case Criterion::entangled:
        return 1.0 / 3.0;
      case Criterion::steerable:
        return 1.0 / (1.0 + s2);
      case Criterion::bell_nonlocal:
        return 1.0 / std::sqrt(1.0 + s2 * s2);
      case Criterion::unsteer_certified:
        // The certificate is already a closed expression in (p, theta);
        // its 1/2 crossing has no simple radical form, so solve it directly.
        return bisect_threshold(
            [theta](double p) { return unsteerability_TU({p, theta}) > 0.5; });
      case Criterion::hidden_steer_g:
        if (std::abs(theta - std::atan(1.0)) < 1e-9) break;  // singular, fall back
        return std::clamp(delta_closed(theta), 0.0, 1.0);
      case Criterion::hidden_bell_g: {
        const double u = csc_sec(theta);
        return std::sqrt(u / (u + 2.0));
      }
    }
  }

  const auto family = [theta](double p) { return noisy_state({p, theta}); };
  const auto g_filtered = [theta](double p) {
    return apply_filter(make_filter(FilterKind::g, theta), noisy_state({p, theta})).state;
  };
  switch (criterion) {
    case Criterion::entangled:
      return bisect_threshold([&](double p) { return concurrence(family(p)) > 0.0; });
    case Criterion::bell_nonlocal:
      return bisect_threshold([&](double p) { return horodecki_S(family(p)) > 2.0; });
    case Criterion::steerable:
      return bisect_threshold([&](double p) { return steering_T_default(family(p)) > 0.75; });
    case Criterion::unsteer_certified:
      return bisect_threshold(
          [theta](double p) { return unsteerability_TU({p, theta}) > 0.5; });
    case Criterion::hidden_steer_g:
      return bisect_threshold(
          [&](double p) { return steering_T_default(g_filtered(p)) > 0.75; });
    case Criterion::hidden_bell_g:
      return bisect_threshold([&](double p) { return horodecki_S(g_filtered(p)) > 2.0; });
  }
  raise(ErrorCode::domain, "unknown threshold criterion");
}

const char* label_name(ReportLabel label) {
  switch (label) {
    case ReportLabel::separable:
      return "Separable";
    case ReportLabel::entangled:
      return "Entangled";
    case ReportLabel::steerable:
      return "Steerable";
    case ReportLabel::bell_nonlocal:
      return "BellNonlocal";
    case ReportLabel::unsteer_certified:
      return "UnsteerCertified";
    case ReportLabel::indeterminate:
      return "Indeterminate";
  }
  return "?";
}

DiscrepancyReport discrepancy_report() {
  DiscrepancyReport rep;
  rep.p = 1.0;
  rep.theta = std::atan(1.0);

  rep.closed_conditional_x =
      1.0 / (2.0 - 2.0 * (rep.p - 1.0) * std::tan(rep.theta) / (rep.p + 1.0));
  const TwoQubitState showcase =
      apply_filter(make_filter(FilterKind::g, rep.theta), noisy_state({rep.p, rep.theta})).state;
  const MeasurementSetting x = MeasurementSetting::x_axis();
  rep.operational_conditional_x = steering_T(showcase, x, x, x, x, 0, 0);
  rep.closed_T = steering_T_closed({rep.p, rep.theta}, FilterKind::g);
  rep.operational_T = steering_T_default(showcase);
  rep.constant_offset = rep.operational_T - rep.closed_T;

  for (int gi = 0; gi < 20; ++gi)
    for (int pi = 0; pi < 20; ++pi) {
      const double gamma = 1.0 + 24.0 * gi / 19.0;
      const StateParams params{pi / 19.0, gamma_to_theta(gamma)};
      const TwoQubitState filtered =
          apply_filter(make_filter(FilterKind::g, params.theta), noisy_state(params)).state;
      rep.concurrence_g_max_abs_diff =
          std::max(rep.concurrence_g_max_abs_diff,
                   std::abs(concurrence(filtered) - concurrence_closed(params, FilterKind::g)));
      rep.bell_g_max_abs_diff =
          std::max(rep.bell_g_max_abs_diff,
                   std::abs(horodecki_S(filtered) - horodecki_S_closed(params, FilterKind::g)));
    }
  return rep;
}

CorrelationReport make_report(const TwoQubitState& state,
                              const std::optional<StateParams>& family_params) {
  CorrelationReport r;
  r.concurrence = concurrence(state);
  r.bell_S = horodecki_S(state);
  r.steering_T = steering_T_default(state);
  if (family_params) r.unsteer_TU = unsteerability_TU(*family_params);

  const bool bell = r.bell_S > 2.0 + kLabelEps;
  const bool steer = bell || r.steering_T > 0.75 + kLabelEps;
  const bool entangled = steer || r.concurrence > kLabelEps;

  r.labels.push_back(entangled ? ReportLabel::entangled : ReportLabel::separable);
  if (steer) r.labels.push_back(ReportLabel::steerable);
  if (bell) r.labels.push_back(ReportLabel::bell_nonlocal);
  if (r.unsteer_TU) {
    if (*r.unsteer_TU <= 0.5 + kLabelEps)
      r.labels.push_back(ReportLabel::unsteer_certified);
    else if (!steer)
      r.labels.push_back(ReportLabel::indeterminate);
  }
  return r;
}

}  // namespace qcorr
