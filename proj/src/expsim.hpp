#pragma once

// Photon-counting experiment simulation: coincidence sampling with Poisson
// accidentals, CHSH and steering estimators, state tomography with a model
// fit, and a full multi-set experiment driver.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "correlations.hpp"
#include "filters.hpp"
#include "rng.hpp"
#include "states.hpp"

namespace qcorr {

using ProbTable = std::array<std::array<double, 2>, 2>;

struct CoincidenceRecord {
  std::string setting_pair;
  std::array<std::array<long long, 2>, 2> counts{};
  double accidentals_expected = 0.0;
  std::string duration_tag;
};

// P[a][b] = tr[(Pi_a (x) Pi_b) rho]. Cells clamped at zero, sum is 1.
ProbTable joint_probs(const TwoQubitState& state, const MeasurementSetting& a,
                      const MeasurementSetting& b);

// One-sided white noise: rho -> p rho + (1-p)/4 sum_k (I(x)s_k) rho (I(x)s_k)
// over s_k in {I, sx, sy, sz}.
TwoQubitState apply_depolarizing(const TwoQubitState& state, double p);

// n_total multinomial events plus an independent Poisson(accidentals/4)
// background per cell; events are drawn first, then the cells in row-major
// order.
CoincidenceRecord sample_counts(const ProbTable& probs, long long n_total,
                                double accidentals_expected, RngStream& rng,
                                const std::string& setting_pair = "");
CoincidenceRecord sample_counts(const ProbTable& probs, long long n_total,
                                double accidentals_expected, std::uint64_t rng_seed);

// Steering estimate from the (sx, sx) and (sz, sz) records, conditioning on
// Alice's outcome a with Bob's matched outcome b = a.
double estimate_T(const CoincidenceRecord& record_x, const CoincidenceRecord& record_z,
                  int outcome_a, bool subtract_accidentals = false);

// CHSH estimate; record order (a1,b1), (a1,b2), (a2,b1), (a2,b2) with the
// minus sign on the last correlator.
double estimate_S(const std::array<CoincidenceRecord, 4>& records,
                  bool subtract_accidentals = false);

// records[i][j] holds the (Alice axis i, Bob axis j) counts, axes x, y, z.
using TomographyRecords = std::array<std::array<CoincidenceRecord, 3>, 3>;

struct TomographyFit {
  TwoQubitState state_hat;
  double p_hat = 0.0;
  double theta_hat = 0.0;
  double TU_hat = 0.0;
  double residual = 0.0;  // Frobenius distance to the fitted family member
};

// Linear inversion over the 16 Pauli expectations (two-sided correlators and
// single-side marginals taken from the same records), projection onto the
// PSD trace-1 cone, then a least-squares fit of the noisy family minimizing
// Frobenius distance. The family is affine in p at fixed theta, so p is
// profiled out exactly and theta is a 1-d search.
TomographyFit tomography_fit(const TomographyRecords& records, bool subtract_accidentals = false);

struct ExperimentOptions {
  int n_per_setting = 2000;
  double accidentals = 10.0;
  int sets = 10;
  double fidelity = 1.0;
  std::uint64_t seed = 0;
  bool subtract_accidentals = false;
};

struct ExperimentReport {
  double S_mean = 0.0, S_std = 0.0;
  double T_mean = 0.0, T_std = 0.0;
  double TU_mean = 0.0, TU_std = 0.0;
  int sets = 0;
  int n_per_setting = 0;
  double accidentals = 0.0;
  double fidelity = 1.0;
  std::uint64_t seed = 0;
  FilterKind filter = FilterKind::identity;
  double success_prob = 1.0;
  bool subtract_accidentals = false;
  std::vector<double> per_set_S, per_set_T, per_set_TU;
};

// Simulates one experiment: prepares the resource at the given fidelity
// (isotropic admixture), sends one side through the depolarizing channel of
// weight p, optionally applies a local filter (post-selected statistics,
// success probability reported) and measures CHSH, steering and tomography
// settings per set. CHSH angles are fixed ahead of time from the ideal
// fidelity-1 model; tomography runs on the unfiltered state. The _std
// fields are standard errors of the reported means across sets.
// Deterministic for a fixed seed via per-set substreams.
ExperimentReport run_experiment(const StateParams& params, FilterKind filter,
                                const ExperimentOptions& options = {});

}  // namespace qcorr
