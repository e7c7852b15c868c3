#include "qcorr/qcorr.h"

#include <cstring>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "correlations.hpp"
#include "error.hpp"
#include "expsim.hpp"
#include "filters.hpp"
#include "json_io.hpp"
#include "phasemap.hpp"
#include "states.hpp"

struct qcorr_state {
  qcorr::TwoQubitState state;
  std::optional<qcorr::StateParams> params;
};

namespace {

thread_local std::string g_last_error;

qcorr_status map_code(qcorr::ErrorCode code) {
  switch (code) {
    case qcorr::ErrorCode::domain: return QCORR_ERR_DOMAIN;
    case qcorr::ErrorCode::not_hermitian: return QCORR_ERR_NOT_HERMITIAN;
    case qcorr::ErrorCode::not_psd: return QCORR_ERR_NOT_PSD;
    case qcorr::ErrorCode::no_convergence: return QCORR_ERR_NO_CONVERGENCE;
    case qcorr::ErrorCode::filtered_to_zero: return QCORR_ERR_FILTERED_TO_ZERO;
    case qcorr::ErrorCode::undefined_conditional: return QCORR_ERR_UNDEFINED_CONDITIONAL;
    case qcorr::ErrorCode::zero_conditioning_counts: return QCORR_ERR_ZERO_CONDITIONING_COUNTS;
    case qcorr::ErrorCode::zero_counts: return QCORR_ERR_ZERO_COUNTS;
    case qcorr::ErrorCode::fit_diverged: return QCORR_ERR_FIT_DIVERGED;
    case qcorr::ErrorCode::io: return QCORR_ERR_IO;
  }
  return QCORR_ERR_UNKNOWN;
}

template <typename Fn>
qcorr_status wrap(Fn&& fn) {
  try {
    fn();
    return QCORR_OK;
  } catch (const qcorr::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QCORR_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown failure";
    return QCORR_ERR_UNKNOWN;
  }
}

qcorr_status fail_argument(const char* msg) {
  g_last_error = msg;
  return QCORR_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

std::optional<qcorr::FilterKind> to_filter_kind(qcorr_filter filter) {
  switch (filter) {
    case QCORR_FILTER_NONE: return qcorr::FilterKind::identity;
    case QCORR_FILTER_F: return qcorr::FilterKind::f;
    case QCORR_FILTER_G: return qcorr::FilterKind::g;
  }
  return std::nullopt;
}

std::optional<qcorr::Criterion> to_criterion(qcorr_criterion criterion) {
  switch (criterion) {
    case QCORR_CRIT_ENTANGLED: return qcorr::Criterion::entangled;
    case QCORR_CRIT_STEERABLE: return qcorr::Criterion::steerable;
    case QCORR_CRIT_BELL: return qcorr::Criterion::bell_nonlocal;
    case QCORR_CRIT_UNSTEER_CERTIFIED: return qcorr::Criterion::unsteer_certified;
    case QCORR_CRIT_HIDDEN_STEER_G: return qcorr::Criterion::hidden_steer_g;
    case QCORR_CRIT_HIDDEN_BELL_G: return qcorr::Criterion::hidden_bell_g;
  }
  return std::nullopt;
}

}  // namespace

extern "C" {

const char* qcorr_version(void) { return "1.0.0"; }

const char* qcorr_status_name(qcorr_status status) {
  switch (status) {
    case QCORR_OK: return "ok";
    case QCORR_ERR_DOMAIN: return "domain";
    case QCORR_ERR_NOT_HERMITIAN: return "not_hermitian";
    case QCORR_ERR_NOT_PSD: return "not_psd";
    case QCORR_ERR_NO_CONVERGENCE: return "no_convergence";
    case QCORR_ERR_FILTERED_TO_ZERO: return "filtered_to_zero";
    case QCORR_ERR_UNDEFINED_CONDITIONAL: return "undefined_conditional";
    case QCORR_ERR_ZERO_CONDITIONING_COUNTS: return "zero_conditioning_counts";
    case QCORR_ERR_ZERO_COUNTS: return "zero_counts";
    case QCORR_ERR_FIT_DIVERGED: return "fit_diverged";
    case QCORR_ERR_IO: return "io";
    case QCORR_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case QCORR_ERR_UNKNOWN: return "unknown";
  }
  return "unknown";
}

const char* qcorr_last_error(void) { return g_last_error.c_str(); }

void qcorr_string_free(char* text) { delete[] text; }

void qcorr_state_free(qcorr_state* state) { delete state; }

qcorr_status qcorr_gamma_to_theta(double gamma, double* out_theta) {
  if (!out_theta) return fail_argument("out_theta is null");
  return wrap([&] { *out_theta = qcorr::gamma_to_theta(gamma); });
}

qcorr_status qcorr_theta_to_gamma(double theta, double* out_gamma) {
  if (!out_gamma) return fail_argument("out_gamma is null");
  return wrap([&] { *out_gamma = qcorr::theta_to_gamma(theta); });
}

qcorr_status qcorr_state_create(double p, double theta, qcorr_state** out_state) {
  if (!out_state) return fail_argument("out_state is null");
  return wrap([&] {
    qcorr::StateParams params{p, theta};
    *out_state = new qcorr_state{qcorr::noisy_state(params), params};
  });
}

qcorr_status qcorr_state_create_gamma(double p, double gamma, qcorr_state** out_state) {
  if (!out_state) return fail_argument("out_state is null");
  return wrap([&] {
    qcorr::StateParams params{p, qcorr::gamma_to_theta(gamma)};
    *out_state = new qcorr_state{qcorr::noisy_state(params), params};
  });
}

qcorr_status qcorr_state_from_json(const char* text, qcorr_state** out_state) {
  if (!text) return fail_argument("text is null");
  if (!out_state) return fail_argument("out_state is null");
  return wrap([&] {
    qcorr::LoadedState loaded = qcorr::state_from_json(text);
    *out_state = new qcorr_state{std::move(loaded.state), loaded.params};
  });
}

qcorr_status qcorr_state_to_json(const qcorr_state* state, char** out_text) {
  if (!state) return fail_argument("state is null");
  if (!out_text) return fail_argument("out_text is null");
  return wrap([&] { *out_text = copy_string(qcorr::state_to_json(state->state, state->params)); });
}

qcorr_status qcorr_state_entries(const qcorr_state* state, double* out_re16, double* out_im16) {
  if (!state) return fail_argument("state is null");
  if (!out_re16 || !out_im16) return fail_argument("output arrays are null");
  const qcorr::Matrix& rho = state->state.matrix();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      out_re16[i * 4 + j] = rho(i, j).real();
      out_im16[i * 4 + j] = rho(i, j).imag();
    }
  return QCORR_OK;
}

qcorr_status qcorr_apply_filter(const qcorr_state* state, qcorr_filter filter,
                                qcorr_state** out_state, double* out_success) {
  if (!state) return fail_argument("state is null");
  if (!out_state) return fail_argument("out_state is null");
  const auto kind = to_filter_kind(filter);
  if (!kind) return fail_argument("unknown filter");
  return wrap([&] {
    if (*kind != qcorr::FilterKind::identity && !state->params)
      qcorr::raise(qcorr::ErrorCode::domain,
                   "filter needs a state with family parameters (p, theta)");
    // theta only matters for f/g, which the check above ties to params
    const double theta = state->params ? state->params->theta : 0.785398163397448;
    qcorr::FilterResult result =
        qcorr::apply_filter(qcorr::make_filter(*kind, theta), state->state);
    if (out_success) *out_success = result.success_prob;
    *out_state = new qcorr_state{std::move(result.state), std::nullopt};
  });
}

qcorr_status qcorr_apply_custom_filter(const qcorr_state* state, double a0, double a1, double b0,
                                       double b1, qcorr_state** out_state, double* out_success) {
  if (!state) return fail_argument("state is null");
  if (!out_state) return fail_argument("out_state is null");
  return wrap([&] {
    qcorr::FilterResult result =
        qcorr::apply_filter(qcorr::make_custom_filter(a0, a1, b0, b1), state->state);
    if (out_success) *out_success = result.success_prob;
    *out_state = new qcorr_state{std::move(result.state), std::nullopt};
  });
}

qcorr_status qcorr_concurrence(const qcorr_state* state, double* out_value) {
  if (!state) return fail_argument("state is null");
  if (!out_value) return fail_argument("out_value is null");
  return wrap([&] { *out_value = qcorr::concurrence(state->state); });
}

qcorr_status qcorr_bell_s(const qcorr_state* state, double* out_value) {
  if (!state) return fail_argument("state is null");
  if (!out_value) return fail_argument("out_value is null");
  return wrap([&] { *out_value = qcorr::horodecki_S(state->state); });
}

qcorr_status qcorr_steering_t(const qcorr_state* state, double* out_value) {
  if (!state) return fail_argument("state is null");
  if (!out_value) return fail_argument("out_value is null");
  return wrap([&] { *out_value = qcorr::steering_T_default(state->state); });
}

qcorr_status qcorr_unsteer_tu(const qcorr_state* state, double* out_value) {
  if (!state) return fail_argument("state is null");
  if (!out_value) return fail_argument("out_value is null");
  return wrap([&] {
    if (!state->params)
      qcorr::raise(qcorr::ErrorCode::domain,
                   "unsteerability certificate needs family parameters (p, theta)");
    *out_value = qcorr::unsteerability_TU(*state->params);
  });
}

qcorr_status qcorr_report_json(const qcorr_state* state, char** out_text) {
  if (!state) return fail_argument("state is null");
  if (!out_text) return fail_argument("out_text is null");
  return wrap([&] {
    qcorr::CorrelationReport report = qcorr::make_report(state->state, state->params);
    *out_text = copy_string(qcorr::report_to_json(report));
  });
}

qcorr_status qcorr_classify_json(double p, double gamma, int with_f, int with_g,
                                 char** out_text) {
  if (!out_text) return fail_argument("out_text is null");
  return wrap([&] {
    qcorr::PointRecord row = qcorr::classify_point(p, gamma, with_f != 0, with_g != 0);
    *out_text = copy_string(qcorr::point_to_json(row));
  });
}

qcorr_status qcorr_scan_csv(const double* gammas, int n_gammas, int p_steps, int with_f,
                            int with_g, char** out_text) {
  if (!gammas) return fail_argument("gammas is null");
  if (n_gammas <= 0) return fail_argument("n_gammas must be positive");
  if (!out_text) return fail_argument("out_text is null");
  return wrap([&] {
    qcorr::GridSpec grid;
    grid.p_steps = p_steps;
    grid.gamma_values.assign(gammas, gammas + n_gammas);
    grid.with_f = with_f != 0;
    grid.with_g = with_g != 0;
    *out_text = copy_string(qcorr::scan_to_csv(qcorr::scan(grid)));
  });
}

qcorr_status qcorr_scan_json(const double* gammas, int n_gammas, int p_steps, int with_f,
                             int with_g, char** out_text) {
  if (!gammas) return fail_argument("gammas is null");
  if (n_gammas <= 0) return fail_argument("n_gammas must be positive");
  if (!out_text) return fail_argument("out_text is null");
  return wrap([&] {
    qcorr::GridSpec grid;
    grid.p_steps = p_steps;
    grid.gamma_values.assign(gammas, gammas + n_gammas);
    grid.with_f = with_f != 0;
    grid.with_g = with_g != 0;
    *out_text = copy_string(qcorr::scan_to_json(qcorr::scan(grid)));
  });
}

qcorr_status qcorr_log_spaced(double lo, double hi, int n, double* out_values) {
  if (!out_values) return fail_argument("out_values is null");
  return wrap([&] {
    std::vector<double> values = qcorr::log_spaced(lo, hi, n);
    std::memcpy(out_values, values.data(), values.size() * sizeof(double));
  });
}

qcorr_status qcorr_threshold(qcorr_criterion criterion, double gamma, int use_bisection,
                             double* out_p, int* out_exists) {
  if (!out_p) return fail_argument("out_p is null");
  if (!out_exists) return fail_argument("out_exists is null");
  const auto crit = to_criterion(criterion);
  if (!crit) return fail_argument("unknown criterion");
  return wrap([&] {
    const auto method =
        use_bisection ? qcorr::SolveMethod::bisection : qcorr::SolveMethod::closed_form;
    std::optional<double> p_star = qcorr::threshold_p(*crit, gamma, method);
    *out_exists = p_star.has_value() ? 1 : 0;
    if (p_star) *out_p = *p_star;
  });
}

void qcorr_sim_options_init(qcorr_sim_options* options) {
  if (!options) return;
  const qcorr::ExperimentOptions defaults;
  options->n_per_setting = defaults.n_per_setting;
  options->accidentals = defaults.accidentals;
  options->sets = defaults.sets;
  options->fidelity = defaults.fidelity;
  options->seed = defaults.seed;
  options->subtract_accidentals = defaults.subtract_accidentals ? 1 : 0;
}

qcorr_status qcorr_simulate_json(double p, double theta, qcorr_filter filter,
                                 const qcorr_sim_options* options, char** out_text) {
  if (!out_text) return fail_argument("out_text is null");
  const auto kind = to_filter_kind(filter);
  if (!kind) return fail_argument("unknown filter");
  return wrap([&] {
    qcorr::ExperimentOptions opts;
    if (options) {
      opts.n_per_setting = options->n_per_setting;
      opts.accidentals = options->accidentals;
      opts.sets = options->sets;
      opts.fidelity = options->fidelity;
      opts.seed = options->seed;
      opts.subtract_accidentals = options->subtract_accidentals != 0;
    }
    qcorr::ExperimentReport report =
        qcorr::run_experiment(qcorr::StateParams{p, theta}, *kind, opts);
    *out_text = copy_string(qcorr::experiment_report_to_json(report));
  });
}

qcorr_status qcorr_discrepancy_json(char** out_text) {
  if (!out_text) return fail_argument("out_text is null");
  return wrap([&] { *out_text = copy_string(qcorr::discrepancy_to_json(qcorr::discrepancy_report())); });
}

}  // extern "C"
