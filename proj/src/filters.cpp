#include "filters.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

namespace {

constexpr double kZeroTraceTol = 1e-12;

bool side_normalized(double d0, double d1) {
  return std::abs(std::max(std::abs(d0), std::abs(d1)) - 1.0) <= 1e-12;
}

}  // namespace

const char* filter_name(FilterKind kind) {
  switch (kind) {
    case FilterKind::identity: return "none";
    case FilterKind::f: return "f";
    case FilterKind::g: return "g";
    case FilterKind::custom: return "custom";
  }
  return "none";
}

Matrix LocalFilter::matrix_a() const {
  Matrix m(2, 2);
  m(0, 0) = a0;
  m(1, 1) = a1;
  return m;
}

Matrix LocalFilter::matrix_b() const {
  Matrix m(2, 2);
  m(0, 0) = b0;
  m(1, 1) = b1;
  return m;
}

LocalFilter make_filter(FilterKind kind, double theta) {
  validate_params({1.0, theta});
  LocalFilter f;
  f.kind = kind;
  switch (kind) {
    case FilterKind::identity:
      break;
    case FilterKind::f:
      f.a0 = std::tan(theta);
      break;
    case FilterKind::g:
      f.a0 = std::sqrt(std::tan(theta));
      f.b1 = std::sqrt(std::tan(theta));
      break;
    case FilterKind::custom:
      raise(ErrorCode::domain, "custom filters take explicit diagonals");
  }
  return normalize(f);
}

LocalFilter make_custom_filter(double a0, double a1, double b0, double b1) {
  for (double d : {a0, a1, b0, b1}) {
    require(std::isfinite(d) && d >= 0.0, ErrorCode::domain,
            "filter diagonals must be finite and non-negative");
  }
  LocalFilter f;
  f.kind = FilterKind::custom;
  f.a0 = a0;
  f.a1 = a1;
  f.b0 = b0;
  f.b1 = b1;
  return normalize(f);
}

LocalFilter normalize(const LocalFilter& filter) {
  LocalFilter f = filter;
  const double ma = std::max(std::abs(f.a0), std::abs(f.a1));
  const double mb = std::max(std::abs(f.b0), std::abs(f.b1));
  require(ma > 0.0 && mb > 0.0, ErrorCode::domain, "cannot normalize a zero filter");
  f.a0 /= ma;
  f.a1 /= ma;
  f.b0 /= mb;
  f.b1 /= mb;
  return f;
}

FilterResult apply_filter(const LocalFilter& filter, const TwoQubitState& state) {
  require(side_normalized(filter.a0, filter.a1) && side_normalized(filter.b0, filter.b1),
          ErrorCode::domain, "filter must be normalized before application");

  const Matrix k = kron(filter.matrix_a(), filter.matrix_b());
  Matrix out = k * state.matrix() * k.adjoint();
  const double tr = out.trace().real();
  require(tr > kZeroTraceTol, ErrorCode::filtered_to_zero, "filter annihilates the state");
  out *= cplx(1.0 / tr, 0.0);
  return FilterResult{TwoQubitState::from_matrix(std::move(out)), tr};
}

}  // namespace qcorr
