#include "hasel/curve.hpp"

#include <algorithm>
#include <cmath>

namespace hasel {

const char* to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::analytic_sampled: return "analytic-sampled";
    case CurveKind::measured: return "measured";
    case CurveKind::fitted: return "fitted";
  }
  return "?";
}

const char* to_string(ForceMode mode) {
  switch (mode) {
    case ForceMode::torque: return "torque";
    case ForceMode::tip_force: return "tip-force";
  }
  return "?";
}

void TorqueAngleCurve::validate() const {
  if (samples.size() < 3)
    fail(ErrorCode::too_few_rows, "curve needs at least 3 samples");
  double prev = -1.0;
  for (const CurvePoint& p : samples) {
    if (!std::isfinite(p.theta_deg) || !std::isfinite(p.value))
      fail(ErrorCode::domain_violation, "curve samples must be finite");
    if (p.theta_deg < 0.0 || p.theta_deg > 180.0)
      fail(ErrorCode::invariant_violation,
           "curve abscissae must lie in [0, 180] degrees");
    if (p.theta_deg <= prev)
      fail(ErrorCode::non_increasing_abscissa,
           "curve abscissae must be strictly increasing");
    prev = p.theta_deg;
  }
}

double TorqueAngleCurve::value_at(double theta_deg) const {
  if (samples.size() < 2)
    fail(ErrorCode::too_few_rows, "curve needs at least 2 samples to interpolate");
  if (theta_deg < theta_min() || theta_deg > theta_max())
    fail(ErrorCode::domain_violation,
         "interpolation outside the curve domain is forbidden");
  auto it = std::upper_bound(
      samples.begin(), samples.end(), theta_deg,
      [](double t, const CurvePoint& p) { return t < p.theta_deg; });
  if (it == samples.begin()) return samples.front().value;
  if (it == samples.end()) return samples.back().value;
  const CurvePoint& hi = *it;
  const CurvePoint& lo = *(it - 1);
  const double w = (theta_deg - lo.theta_deg) / (hi.theta_deg - lo.theta_deg);
  return lo.value + w * (hi.value - lo.value);
}

}  // namespace hasel
