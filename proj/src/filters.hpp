#pragma once

// Diagonal local filters (SLOCC elements) acting as
//   rho -> (K_A (x) K_B) rho (K_A (x) K_B)^dagger / trace,
// succeeding with probability equal to that trace.

#include "states.hpp"

namespace qcorr {

enum class FilterKind { identity, f, g, custom };

// "none", "f", "g" or "custom"
const char* filter_name(FilterKind kind);

struct LocalFilter {
  FilterKind kind = FilterKind::identity;
  double a0 = 1.0, a1 = 1.0;  // diag of K_A
  double b0 = 1.0, b1 = 1.0;  // diag of K_B

  Matrix matrix_a() const;
  Matrix matrix_b() const;
};

struct FilterResult {
  TwoQubitState state;
  double success_prob;
};

// F: K_A = diag(tan theta, 1), K_B = I.
// G: K_A = diag(sqrt(tan theta), 1), K_B = diag(1, sqrt(tan theta)).
// Both returned normalized (largest entry per side = 1).
LocalFilter make_filter(FilterKind kind, double theta);
LocalFilter make_custom_filter(double a0, double a1, double b0, double b1);

// Rescales each side so its largest diagonal entry is 1.
LocalFilter normalize(const LocalFilter& filter);

// Throws FilteredToZero when the trace vanishes, Domain when the filter
// is not normalized.
FilterResult apply_filter(const LocalFilter& filter, const TwoQubitState& state);

}  // namespace qcorr
