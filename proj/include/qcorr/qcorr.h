#ifndef QCORR_H
#define QCORR_H

/* C interface to the two-qubit correlation library. All functions return a
 * qcorr_status; outputs go through pointers. Strings returned through char**
 * are heap-allocated and must be released with qcorr_string_free, states
 * with qcorr_state_free. A human-readable message for the most recent
 * failure on the calling thread is available from qcorr_last_error. */

#include <stdint.h>

#if defined(_WIN32)
#define QCORR_API __declspec(dllexport)
#else
#define QCORR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qcorr_status {
  QCORR_OK = 0,
  QCORR_ERR_DOMAIN = 1,
  QCORR_ERR_NOT_HERMITIAN = 2,
  QCORR_ERR_NOT_PSD = 3,
  QCORR_ERR_NO_CONVERGENCE = 4,
  QCORR_ERR_FILTERED_TO_ZERO = 5,
  QCORR_ERR_UNDEFINED_CONDITIONAL = 6,
  QCORR_ERR_ZERO_CONDITIONING_COUNTS = 7,
  QCORR_ERR_ZERO_COUNTS = 8,
  QCORR_ERR_FIT_DIVERGED = 9,
  QCORR_ERR_IO = 10,
  QCORR_ERR_INVALID_ARGUMENT = 11,
  QCORR_ERR_UNKNOWN = 99
} qcorr_status;

typedef enum qcorr_filter {
  QCORR_FILTER_NONE = 0,
  QCORR_FILTER_F = 1,
  QCORR_FILTER_G = 2
} qcorr_filter;

typedef enum qcorr_criterion {
  QCORR_CRIT_ENTANGLED = 0,
  QCORR_CRIT_STEERABLE = 1,
  QCORR_CRIT_BELL = 2,
  QCORR_CRIT_UNSTEER_CERTIFIED = 3,
  QCORR_CRIT_HIDDEN_STEER_G = 4,
  QCORR_CRIT_HIDDEN_BELL_G = 5
} qcorr_criterion;

/* Two-qubit density matrix, optionally carrying the (p, theta) parameters
 * it was built from. */
typedef struct qcorr_state qcorr_state;

QCORR_API const char* qcorr_version(void);
QCORR_API const char* qcorr_status_name(qcorr_status status);
QCORR_API const char* qcorr_last_error(void);
QCORR_API void qcorr_string_free(char* text);
QCORR_API void qcorr_state_free(qcorr_state* state);

/* gamma = cot^2(theta); gamma >= 1 maps onto theta in (0, pi/4]. */
QCORR_API qcorr_status qcorr_gamma_to_theta(double gamma, double* out_theta);
QCORR_API qcorr_status qcorr_theta_to_gamma(double theta, double* out_gamma);

/* Family member p |psi><psi| + (1-p) rho_A (x) I/2. */
QCORR_API qcorr_status qcorr_state_create(double p, double theta, qcorr_state** out_state);
QCORR_API qcorr_status qcorr_state_create_gamma(double p, double gamma, qcorr_state** out_state);

/* {"re": [16], "im": [16]} row-major with an optional "params" block. */
QCORR_API qcorr_status qcorr_state_from_json(const char* text, qcorr_state** out_state);
QCORR_API qcorr_status qcorr_state_to_json(const qcorr_state* state, char** out_text);
QCORR_API qcorr_status qcorr_state_entries(const qcorr_state* state, double* out_re16,
                                           double* out_im16);

/* Filtered states are post-selected and renormalized; the success
 * probability is written to out_success when non-null. Requires the state
 * to carry family parameters (the filters depend on theta). */
QCORR_API qcorr_status qcorr_apply_filter(const qcorr_state* state, qcorr_filter filter,
                                          qcorr_state** out_state, double* out_success);

/* Custom diagonal filter K_A = diag(a0, a1), K_B = diag(b0, b1); entries are
 * rescaled so the largest per side is 1. Works on any state. */
QCORR_API qcorr_status qcorr_apply_custom_filter(const qcorr_state* state, double a0, double a1,
                                                 double b0, double b1, qcorr_state** out_state,
                                                 double* out_success);

QCORR_API qcorr_status qcorr_concurrence(const qcorr_state* state, double* out_value);
QCORR_API qcorr_status qcorr_bell_s(const qcorr_state* state, double* out_value);
QCORR_API qcorr_status qcorr_steering_t(const qcorr_state* state, double* out_value);
/* Unsteerability certificate; needs family parameters. */
QCORR_API qcorr_status qcorr_unsteer_tu(const qcorr_state* state, double* out_value);

/* {"concurrence", "bell_S", "steering_T", "unsteer_TU", "labels"} */
QCORR_API qcorr_status qcorr_report_json(const qcorr_state* state, char** out_text);

/* Full phase-diagram point: all measures, filtered columns and region
 * labels at (p, gamma). */
QCORR_API qcorr_status qcorr_classify_json(double p, double gamma, int with_f, int with_g,
                                           char** out_text);

/* p-major rows per gamma value; CSV columns
 * gamma,theta,p,C,S,T,TU,S_F,T_F,C_F,S_G,T_G,C_G,labels. */
QCORR_API qcorr_status qcorr_scan_csv(const double* gammas, int n_gammas, int p_steps,
                                      int with_f, int with_g, char** out_text);
QCORR_API qcorr_status qcorr_scan_json(const double* gammas, int n_gammas, int p_steps,
                                       int with_f, int with_g, char** out_text);

/* n >= 2 logarithmically spaced values with exact endpoints. */
QCORR_API qcorr_status qcorr_log_spaced(double lo, double hi, int n, double* out_values);

/* Smallest p at which the criterion holds. *out_exists is 0 when it never
 * does (out_p is then untouched). use_bisection = 0 selects the closed
 * forms. */
QCORR_API qcorr_status qcorr_threshold(qcorr_criterion criterion, double gamma,
                                       int use_bisection, double* out_p, int* out_exists);

typedef struct qcorr_sim_options {
  int n_per_setting;
  double accidentals;
  int sets;
  double fidelity;
  uint64_t seed;
  int subtract_accidentals;
} qcorr_sim_options;

/* Defaults: n 2000, accidentals 10, sets 10, fidelity 1, seed 0, raw counts. */
QCORR_API void qcorr_sim_options_init(qcorr_sim_options* options);

/* Deterministic simulated experiment; returns the report as JSON. */
QCORR_API qcorr_status qcorr_simulate_json(double p, double theta, qcorr_filter filter,
                                           const qcorr_sim_options* options, char** out_text);

/* Machine-readable note on the known closed-form/operational steering
 * mismatch for the g-filtered family. */
QCORR_API qcorr_status qcorr_discrepancy_json(char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* QCORR_H */
