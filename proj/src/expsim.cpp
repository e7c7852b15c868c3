#include "expsim.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "error.hpp"
#include "qmat.hpp"

namespace qcorr {

namespace {

double real_trace_product(const Matrix& a, const Matrix& b) {
  cplx t = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t.real();
}

long long sample_poisson(RngStream& rng, double lambda) {
  if (lambda <= 0.0) return 0;
  if (lambda > 30.0) {
    const long long head = sample_poisson(rng, lambda / 2.0);
    return head + sample_poisson(rng, lambda / 2.0);
  }
  const double limit = std::exp(-lambda);
  long long k = 0;
  double prod = rng.uniform01();
  while (prod > limit) {
    ++k;
    prod *= rng.uniform01();
  }
  return k;
}

double cell(const CoincidenceRecord& r, int a, int b, bool subtract) {
  double v = static_cast<double>(r.counts[a][b]);
  if (subtract) v = std::max(0.0, v - r.accidentals_expected / 4.0);
  return v;
}

double correlator(const CoincidenceRecord& r, bool subtract) {
  double num = 0.0, den = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double v = cell(r, a, b, subtract);
      num += ((a + b) % 2 == 0) ? v : -v;
      den += v;
    }
  require(den > 0.0, ErrorCode::zero_counts, "empty coincidence record");
  return num / den;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// standard error of the mean across sets; 0 for a single set
double sem_of(std::vector<double> v, double mean) {
  const auto n = v.size();
  if (n < 2) return 0.0;
  std::sort(v.begin(), v.end());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
}

}  // namespace

ProbTable joint_probs(const TwoQubitState& state, const MeasurementSetting& a,
                      const MeasurementSetting& b) {
  const Matrix& rho = state.matrix();
  ProbTable probs{};
  double total = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double v = real_trace_product(kron(a.projector(i), b.projector(j)), rho);
      require(v >= -1e-12 && v <= 1.0 + 1e-12, ErrorCode::domain,
              "projector trace outside [0, 1]");
      v = std::clamp(v, 0.0, 1.0);
      probs[i][j] = v;
      total += v;
    }
  require(std::abs(total - 1.0) <= 1e-12, ErrorCode::domain,
          "joint probabilities must sum to 1");
  return probs;
}

TwoQubitState apply_depolarizing(const TwoQubitState& state, double p) {
  require(std::isfinite(p) && p >= 0.0 && p <= 1.0, ErrorCode::domain,
          "channel weight must lie in [0, 1]");
  const Matrix& rho = state.matrix();
  const Matrix* paulis[4] = {&identity2(), &pauli_x(), &pauli_y(), &pauli_z()};
  Matrix mix(4, 4);
  for (const Matrix* s : paulis) {
    const Matrix k = kron(identity2(), *s);
    mix += k * rho * k;
  }
  return TwoQubitState::from_matrix(p * rho + ((1.0 - p) / 4.0) * mix);
}

CoincidenceRecord sample_counts(const ProbTable& probs, long long n_total,
                                double accidentals_expected, RngStream& rng,
                                const std::string& setting_pair) {
  require(n_total > 0, ErrorCode::domain, "event count must be positive");
  require(std::isfinite(accidentals_expected) && accidentals_expected >= 0.0,
          ErrorCode::domain, "expected accidentals must be nonnegative");
  double edges[3];
  double total = 0.0;
  int idx = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double v = probs[a][b];
      require(std::isfinite(v) && v >= 0.0, ErrorCode::domain,
              "cell probabilities must be nonnegative");
      total += v;
      if (idx < 3) edges[idx] = total;
      ++idx;
    }
  require(std::abs(total - 1.0) <= 1e-9, ErrorCode::domain, "cell probabilities must sum to 1");

  CoincidenceRecord rec;
  rec.setting_pair = setting_pair;
  rec.accidentals_expected = accidentals_expected;
  for (long long i = 0; i < n_total; ++i) {
    const double u = rng.uniform01();
    if (u < edges[0])
      ++rec.counts[0][0];
    else if (u < edges[1])
      ++rec.counts[0][1];
    else if (u < edges[2])
      ++rec.counts[1][0];
    else
      ++rec.counts[1][1];
  }
  if (accidentals_expected > 0.0)
    for (auto& row : rec.counts)
      for (auto& c : row) c += sample_poisson(rng, accidentals_expected / 4.0);
  return rec;
}

CoincidenceRecord sample_counts(const ProbTable& probs, long long n_total,
                                double accidentals_expected, std::uint64_t rng_seed) {
  RngStream rng(rng_seed, 0);
  return sample_counts(probs, n_total, accidentals_expected, rng, "");
}

double estimate_T(const CoincidenceRecord& record_x, const CoincidenceRecord& record_z,
                  int outcome_a, bool subtract_accidentals) {
  require(outcome_a == 0 || outcome_a == 1, ErrorCode::domain, "outcome must be 0 or 1");
  double total = 0.0;
  for (const CoincidenceRecord* rec : {&record_x, &record_z}) {
    const double hit = cell(*rec, outcome_a, outcome_a, subtract_accidentals);
    const double row = hit + cell(*rec, outcome_a, 1 - outcome_a, subtract_accidentals);
    require(row > 0.0, ErrorCode::zero_conditioning_counts,
            "no events with the conditioning outcome");
    total += hit / row;
  }
  return total / 2.0;
}

double estimate_S(const std::array<CoincidenceRecord, 4>& records, bool subtract_accidentals) {
  const double e0 = correlator(records[0], subtract_accidentals);
  const double e1 = correlator(records[1], subtract_accidentals);
  const double e2 = correlator(records[2], subtract_accidentals);
  const double e3 = correlator(records[3], subtract_accidentals);
  return e0 + e1 + e2 - e3;
}

TomographyFit tomography_fit(const TomographyRecords& records, bool subtract_accidentals) {
  double corr[3][3];
  double ma[3] = {0.0, 0.0, 0.0};
  double mb[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const CoincidenceRecord& r = records[i][j];
      const double v00 = cell(r, 0, 0, subtract_accidentals);
      const double v01 = cell(r, 0, 1, subtract_accidentals);
      const double v10 = cell(r, 1, 0, subtract_accidentals);
      const double v11 = cell(r, 1, 1, subtract_accidentals);
      const double den = v00 + v01 + v10 + v11;
      require(den > 0.0, ErrorCode::zero_counts, "empty coincidence record");
      corr[i][j] = (v00 - v01 - v10 + v11) / den;
      ma[i] += (v00 + v01 - v10 - v11) / den / 3.0;
      mb[j] += (v00 - v01 + v10 - v11) / den / 3.0;
    }

  const Matrix* paulis[3] = {&pauli_x(), &pauli_y(), &pauli_z()};
  Matrix rho = kron(identity2(), identity2());
  for (int i = 0; i < 3; ++i) {
    rho += ma[i] * kron(*paulis[i], identity2());
    rho += mb[i] * kron(identity2(), *paulis[i]);
    for (int j = 0; j < 3; ++j) rho += corr[i][j] * kron(*paulis[i], *paulis[j]);
  }
  rho *= 0.25;

  const EigResult eig = hermitian_eig(rho);
  Matrix psd(4, 4);
  double tr = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double lam = std::max(eig.values[k], 0.0);
    if (lam == 0.0) continue;
    tr += lam;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        psd(r, c) += lam * eig.vectors(r, k) * std::conj(eig.vectors(c, k));
  }
  require(tr > 1e-12, ErrorCode::fit_diverged, "reconstruction has no positive weight");
  psd *= 1.0 / tr;

  const auto fit_at = [&psd](double theta, double* p_out) {
    const Matrix mix = noisy_state(StateParams{0.0, theta}).matrix();
    const Matrix pure = pure_state(theta).matrix();
    double mm = 0.0, md = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const cplx m = pure(r, c) - mix(r, c);
        const cplx d = psd(r, c) - mix(r, c);
        mm += std::norm(m);
        md += (std::conj(m) * d).real();
      }
    const double p = std::clamp(md / mm, 0.0, 1.0);
    double res2 = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const cplx m = pure(r, c) - mix(r, c);
        const cplx d = psd(r, c) - mix(r, c);
        res2 += std::norm(d - p * m);
      }
    if (p_out) *p_out = p;
    return res2;
  };

  const double quarter_pi = std::atan(1.0);
  const int scan = 256;
  double best_theta = quarter_pi;
  double best_res = fit_at(quarter_pi, nullptr);
  for (int k = 1; k < scan; ++k) {
    const double theta = quarter_pi * k / scan;
    const double r2 = fit_at(theta, nullptr);
    if (r2 < best_res) {
      best_res = r2;
      best_theta = theta;
    }
  }
  const double step = quarter_pi / scan;
  double lo = std::max(best_theta - step, 1e-9);
  double hi = std::min(best_theta + step, quarter_pi);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = fit_at(x1, nullptr);
  double f2 = fit_at(x2, nullptr);
  while (hi - lo > 1e-13) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = fit_at(x1, nullptr);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = fit_at(x2, nullptr);
    }
  }
  const double theta_hat = 0.5 * (lo + hi);
  double p_hat = 0.0;
  const double res2 = fit_at(theta_hat, &p_hat);
  const double residual = std::sqrt(std::max(res2, 0.0));
  require(residual <= 0.1, ErrorCode::fit_diverged,
          "reconstruction too far from the model family");
  const double tu_hat = unsteerability_TU(StateParams{p_hat, theta_hat});
  return TomographyFit{TwoQubitState::from_matrix(std::move(psd)), p_hat, theta_hat, tu_hat,
                       residual};
}

ExperimentReport run_experiment(const StateParams& params, FilterKind filter,
                                const ExperimentOptions& options) {
  validate_params(params);
  require(filter == FilterKind::identity || filter == FilterKind::f || filter == FilterKind::g,
          ErrorCode::domain, "filter must be identity, f or g");
  require(options.n_per_setting > 0, ErrorCode::domain, "n_per_setting must be positive");
  require(options.sets > 0, ErrorCode::domain, "sets must be positive");
  require(std::isfinite(options.accidentals) && options.accidentals >= 0.0, ErrorCode::domain,
          "accidentals must be nonnegative");
  require(std::isfinite(options.fidelity) && options.fidelity > 0.25 && options.fidelity <= 1.0,
          ErrorCode::domain, "fidelity must lie in (0.25, 1]");

  // resource at the requested fidelity, then the one-sided noise channel
  const double x = (4.0 * options.fidelity - 1.0) / 3.0;
  Matrix resource =
      x * pure_state(params.theta).matrix() + ((1.0 - x) / 4.0) * Matrix::identity(4);
  const TwoQubitState prepared =
      apply_depolarizing(TwoQubitState::from_matrix(std::move(resource)), params.p);

  double success = 1.0;
  TwoQubitState measured = prepared;
  if (filter != FilterKind::identity) {
    FilterResult fr = apply_filter(make_filter(filter, params.theta), prepared);
    measured = std::move(fr.state);
    success = fr.success_prob;
  }

  // settings fixed ahead of time from the ideal fidelity-1 model
  const auto [phi1, phi2] = optimal_bob_angles(params, filter);
  const MeasurementSetting ax = MeasurementSetting::x_axis();
  const MeasurementSetting ay = MeasurementSetting::bloch(0.0, 1.0, 0.0);
  const MeasurementSetting az = MeasurementSetting::z_axis();
  const MeasurementSetting b1 = MeasurementSetting::plane_angle(phi1);
  const MeasurementSetting b2 = MeasurementSetting::plane_angle(phi2);

  const ProbTable chsh_probs[4] = {joint_probs(measured, ax, b1), joint_probs(measured, ax, b2),
                                   joint_probs(measured, az, b1), joint_probs(measured, az, b2)};
  static const char* kChshNames[4] = {"a1b1", "a1b2", "a2b1", "a2b2"};
  const ProbTable steer_x = joint_probs(measured, ax, ax);
  const ProbTable steer_z = joint_probs(measured, az, az);
  const MeasurementSetting axes[3] = {ax, ay, az};
  static const char* kAxisNames[3] = {"x", "y", "z"};
  ProbTable tomo_probs[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) tomo_probs[i][j] = joint_probs(prepared, axes[i], axes[j]);

  // substream k of set s is (seed, 16 s + k): 0-3 CHSH, 4-5 steering, 6-14 tomography
  std::vector<double> per_S, per_T, per_TU;
  for (int set = 0; set < options.sets; ++set) {
    const auto stream_for = [&](int setting) {
      return RngStream(options.seed, static_cast<std::uint64_t>(set) * 16 + setting);
    };
    std::array<CoincidenceRecord, 4> chsh_records;
    for (int k = 0; k < 4; ++k) {
      RngStream rng = stream_for(k);
      chsh_records[k] = sample_counts(chsh_probs[k], options.n_per_setting, options.accidentals,
                                      rng, kChshNames[k]);
    }
    RngStream rng_sx = stream_for(4);
    const CoincidenceRecord rec_x =
        sample_counts(steer_x, options.n_per_setting, options.accidentals, rng_sx, "xx");
    RngStream rng_sz = stream_for(5);
    const CoincidenceRecord rec_z =
        sample_counts(steer_z, options.n_per_setting, options.accidentals, rng_sz, "zz");
    TomographyRecords tomo;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        RngStream rng_t = stream_for(6 + 3 * i + j);
        tomo[i][j] = sample_counts(tomo_probs[i][j], options.n_per_setting, options.accidentals,
                                   rng_t, std::string(kAxisNames[i]) + kAxisNames[j]);
      }
    per_S.push_back(estimate_S(chsh_records, options.subtract_accidentals));
    per_T.push_back(estimate_T(rec_x, rec_z, 0, options.subtract_accidentals));
    per_TU.push_back(tomography_fit(tomo, options.subtract_accidentals).TU_hat);
  }

  ExperimentReport report;
  report.S_mean = mean_of(per_S);
  report.S_std = sem_of(per_S, report.S_mean);
  report.T_mean = mean_of(per_T);
  report.T_std = sem_of(per_T, report.T_mean);
  report.TU_mean = mean_of(per_TU);
  report.TU_std = sem_of(per_TU, report.TU_mean);
  report.sets = options.sets;
  report.n_per_setting = options.n_per_setting;
  report.accidentals = options.accidentals;
  report.fidelity = options.fidelity;
  report.seed = options.seed;
  report.filter = filter;
  report.success_prob = success;
  report.subtract_accidentals = options.subtract_accidentals;
  report.per_set_S = std::move(per_S);
  report.per_set_T = std::move(per_T);
  report.per_set_TU = std::move(per_TU);
  return report;
}

}  // namespace qcorr
