#include "phasemap.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace qcorr {

namespace {

constexpr double kEps = 1e-12;
const double kNan = std::nan("");

std::string fmt9(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void validate_grid(const GridSpec& grid) {
  require(grid.p_min >= 0.0 && grid.p_max <= 1.0 && grid.p_min < grid.p_max, ErrorCode::domain,
          "grid needs 0 <= p_min < p_max <= 1");
  require(grid.p_steps >= 2, ErrorCode::domain, "grid needs at least 2 p steps");
  require(!grid.gamma_values.empty(), ErrorCode::domain, "grid needs at least one gamma");
  for (double g : grid.gamma_values)
    require(std::isfinite(g) && g >= 1.0, ErrorCode::domain, "grid gamma values must be >= 1");
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo >= 1.0 && lo < hi, ErrorCode::domain,
          "log spacing needs 1 <= lo < hi");
  require(n >= 2, ErrorCode::domain, "log spacing needs at least 2 values");
  std::vector<double> out(n);
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(la + (lb - la) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

const char* region_label_name(RegionLabel label) {
  switch (label) {
    case RegionLabel::separable:
      return "Separable";
    case RegionLabel::entangled_only:
      return "EntangledOnly";
    case RegionLabel::steerable:
      return "Steerable";
    case RegionLabel::bell_nonlocal:
      return "BellNonlocal";
    case RegionLabel::unsteer_certified:
      return "UnsteerCertified";
    case RegionLabel::indeterminate:
      return "Indeterminate";
    case RegionLabel::hidden_bell_f:
      return "HiddenBell_F";
    case RegionLabel::hidden_bell_g:
      return "HiddenBell_G";
    case RegionLabel::hidden_steer_f:
      return "HiddenSteer_F";
    case RegionLabel::hidden_steer_g:
      return "HiddenSteer_G";
  }
  return "?";
}

PointRecord classify_point(double p, double gamma, bool with_f, bool with_g) {
  const double theta = gamma_to_theta(gamma);
  const StateParams params{p, theta};
  validate_params(params);

  PointRecord rec;
  rec.gamma = gamma;
  rec.theta = theta;
  rec.p = p;

  const TwoQubitState state = noisy_state(params);
  rec.C = concurrence(state);
  rec.S = horodecki_S(state);
  rec.T = steering_T_default(state);
  rec.TU = unsteerability_TU(params);

  rec.S_F = rec.T_F = rec.C_F = kNan;
  rec.S_G = rec.T_G = rec.C_G = kNan;
  if (with_f) {
    const TwoQubitState f = apply_filter(make_filter(FilterKind::f, theta), state).state;
    rec.S_F = horodecki_S(f);
    rec.T_F = steering_T_default(f);
    rec.C_F = concurrence(f);
  }
  if (with_g) {
    const TwoQubitState g = apply_filter(make_filter(FilterKind::g, theta), state).state;
    rec.S_G = horodecki_S(g);
    rec.T_G = steering_T_default(g);
    rec.C_G = concurrence(g);
  }

  const bool bell = rec.S > 2.0 + kEps;
  const bool steer = bell || rec.T > 0.75 + kEps;
  const bool entangled = steer || rec.C > kEps;
  const bool certified = rec.TU <= 0.5 + kEps;

  if (!entangled)
    rec.labels.push_back(RegionLabel::separable);
  else if (!steer)
    rec.labels.push_back(RegionLabel::entangled_only);
  if (steer) rec.labels.push_back(RegionLabel::steerable);
  if (bell) rec.labels.push_back(RegionLabel::bell_nonlocal);
  if (certified)
    rec.labels.push_back(RegionLabel::unsteer_certified);
  else if (!steer)
    rec.labels.push_back(RegionLabel::indeterminate);
  if (with_f) {
    if (!bell && rec.S_F > 2.0 + kEps) rec.labels.push_back(RegionLabel::hidden_bell_f);
    if (certified && rec.T_F > 0.75 + kEps) rec.labels.push_back(RegionLabel::hidden_steer_f);
  }
  if (with_g) {
    if (!bell && rec.S_G > 2.0 + kEps) rec.labels.push_back(RegionLabel::hidden_bell_g);
    if (certified && rec.T_G > 0.75 + kEps) rec.labels.push_back(RegionLabel::hidden_steer_g);
  }
  return rec;
}

std::vector<PointRecord> scan(const GridSpec& grid) {
  validate_grid(grid);
  std::vector<double> ps(grid.p_steps);
  for (int i = 0; i < grid.p_steps; ++i)
    ps[i] = grid.p_min + (grid.p_max - grid.p_min) * i / (grid.p_steps - 1);
  ps.back() = grid.p_max;

  const size_t total = grid.gamma_values.size() * ps.size();
  std::vector<PointRecord> rows(total);

  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (;;) {
      const size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      const size_t gi = idx / ps.size();
      const size_t pi = idx % ps.size();
      try {
        rows[idx] = classify_point(ps[pi], grid.gamma_values[gi], grid.with_f, grid.with_g);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const size_t nthreads = std::min<size_t>(worker_count(), total);
  if (nthreads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (size_t i = 0; i < nthreads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<BoundaryPoint> boundary_curve(Criterion criterion,
                                          const std::vector<double>& gamma_values) {
  std::vector<BoundaryPoint> out;
  out.reserve(gamma_values.size());
  for (double gamma : gamma_values)
    out.push_back({gamma, threshold_p(criterion, gamma, SolveMethod::bisection)});
  return out;
}

std::vector<HiddenSteerBoundary> hidden_steer_boundary(const std::vector<double>& gamma_values) {
  std::vector<HiddenSteerBoundary> out;
  out.reserve(gamma_values.size());
  for (double gamma : gamma_values) {
    HiddenSteerBoundary b;
    b.gamma = gamma;
    b.delta_closed = threshold_p(Criterion::hidden_steer_g, gamma, SolveMethod::closed_form)
                         .value_or(kNan);
    b.delta_operational =
        threshold_p(Criterion::hidden_steer_g, gamma, SolveMethod::bisection).value_or(kNan);
    out.push_back(b);
  }
  return out;
}

std::string scan_to_csv(const std::vector<PointRecord>& rows) {
  std::string out = "gamma,theta,p,C,S,T,TU,S_F,T_F,C_F,S_G,T_G,C_G,labels\n";
  for (const PointRecord& r : rows) {
    const double vals[13] = {r.gamma, r.theta, r.p,   r.C,   r.S,   r.T,  r.TU,
                             r.S_F,   r.T_F,   r.C_F, r.S_G, r.T_G, r.C_G};
    for (double v : vals) {
      out += fmt9(v);
      out += ',';
    }
    for (size_t i = 0; i < r.labels.size(); ++i) {
      if (i) out += ';';
      out += region_label_name(r.labels[i]);
    }
    out += '\n';
  }
  return out;
}

std::string boundary_to_csv(const std::vector<BoundaryPoint>& curve) {
  std::string out = "gamma,p_star\n";
  for (const BoundaryPoint& b : curve) {
    out += fmt9(b.gamma);
    out += ',';
    out += b.p_star ? fmt9(*b.p_star) : "nan";
    out += '\n';
  }
  return out;
}

std::string hidden_steer_boundary_to_csv(const std::vector<HiddenSteerBoundary>& curve) {
  std::string out = "gamma,delta_closed,delta_operational\n";
  for (const HiddenSteerBoundary& b : curve) {
    out += fmt9(b.gamma);
    out += ',';
    out += fmt9(b.delta_closed);
    out += ',';
    out += fmt9(b.delta_operational);
    out += '\n';
  }
  return out;
}

int worker_count() {
  if (const char* env = std::getenv("QCORR_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096) return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

}  // namespace qcorr
