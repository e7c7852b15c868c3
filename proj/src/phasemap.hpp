#pragma once

// Sweep of the (p, gamma) plane: per-point measures for the unfiltered,
// F-filtered and G-filtered states, region labels, boundary curves, and
// CSV export. Rows are ordered gamma-major, then p ascending.

#include <optional>
#include <string>
#include <vector>

#include "correlations.hpp"

namespace qcorr {

struct GridSpec {
  double p_min = 0.0;
  double p_max = 1.0;
  int p_steps = 2;
  std::vector<double> gamma_values;
  bool with_f = true;
  bool with_g = true;
};

void validate_grid(const GridSpec& grid);

// n log-spaced values over [lo, hi], endpoints exact. Requires n >= 2,
// 1 <= lo < hi.
std::vector<double> log_spaced(double lo, double hi, int n);

enum class RegionLabel {
  separable,
  entangled_only,
  steerable,
  bell_nonlocal,
  unsteer_certified,
  indeterminate,
  hidden_bell_f,
  hidden_bell_g,
  hidden_steer_f,
  hidden_steer_g,
};

const char* region_label_name(RegionLabel label);

struct PointRecord {
  double gamma = 0.0, theta = 0.0, p = 0.0;
  double C = 0.0, S = 0.0, T = 0.0, TU = 0.0;
  // NaN when the filter was not part of the scan
  double S_F = 0.0, T_F = 0.0, C_F = 0.0;
  double S_G = 0.0, T_G = 0.0, C_G = 0.0;
  std::vector<RegionLabel> labels;
};

// HiddenBell_X: unfiltered S <= 2 and X-filtered S > 2.
// HiddenSteer_X: unfiltered T_U <= 1/2 and X-filtered T > 3/4.
PointRecord classify_point(double p, double gamma, bool with_f = true, bool with_g = true);

// Parallel over points (worker_count() threads), deterministic row order.
std::vector<PointRecord> scan(const GridSpec& grid);

struct BoundaryPoint {
  double gamma = 0.0;
  std::optional<double> p_star;
};

// Bisection threshold per gamma; nullopt where the criterion never holds.
std::vector<BoundaryPoint> boundary_curve(Criterion criterion,
                                          const std::vector<double>& gamma_values);

// The hidden-steerability boundary for G in both tracks. The closed-form
// column uses the printed boundary expression (bisection fallback at its
// theta = pi/4 singularity); the operational column bisects the filtered
// steering value.
struct HiddenSteerBoundary {
  double gamma = 0.0;
  double delta_closed = 0.0;
  double delta_operational = 0.0;
};

std::vector<HiddenSteerBoundary> hidden_steer_boundary(const std::vector<double>& gamma_values);

// Header: gamma,theta,p,C,S,T,TU,S_F,T_F,C_F,S_G,T_G,C_G,labels
// Floats with 9 significant digits, missing filter columns as "nan",
// labels joined with ';'.
std::string scan_to_csv(const std::vector<PointRecord>& rows);
std::string boundary_to_csv(const std::vector<BoundaryPoint>& curve);
std::string hidden_steer_boundary_to_csv(const std::vector<HiddenSteerBoundary>& curve);

// QCORR_WORKERS when set to a positive integer, hardware concurrency else.
int worker_count();

}  // namespace qcorr
