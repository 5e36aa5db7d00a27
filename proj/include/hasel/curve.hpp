#pragma once

#include <vector>

#include "hasel/error.hpp"

namespace hasel {

enum class CurveKind { analytic_sampled, measured, fitted };
enum class ForceMode { torque, tip_force };

const char* to_string(CurveKind kind);
const char* to_string(ForceMode mode);

struct CurvePoint {
  double theta_deg;
  double value;
};

/// Sampled force-or-torque versus joint deflection. The universal object
/// every comparison in this library runs on. Abscissae are degrees,
/// strictly increasing, within [0, 180]; at least three samples.
struct TorqueAngleCurve {
  std::vector<CurvePoint> samples;
  CurveKind kind = CurveKind::analytic_sampled;
  ForceMode mode = ForceMode::torque;

  void validate() const;
  double theta_min() const { return samples.front().theta_deg; }
  double theta_max() const { return samples.back().theta_deg; }

  /// Linear interpolation. Extrapolation is forbidden; out-of-domain
  /// queries throw.
  double value_at(double theta_deg) const;
};

struct CrossoverPoint {
  double theta_deg;
  double value;
};

/// Result of intersecting two curves. `degenerate` flags the
/// identical-curves case, where no discrete point list is meaningful.
struct CrossoverResult {
  bool degenerate = false;
  std::vector<CrossoverPoint> points;
};

}  // namespace hasel
