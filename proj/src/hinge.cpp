#include "hasel/hinge.hpp"

#include <cmath>

namespace hasel {

namespace {

// Force along the pouch axis at a scheduled zip angle; tolerates the
// closed end of the interval where the wedge factor vanishes.
double drive_force(const HingeUnit& unit, double voltage, double zip_angle) {
  if (!std::isfinite(voltage) || voltage < 0.0 || voltage > max_drive_voltage)
    fail(ErrorCode::invariant_violation, "voltage must lie in [0, 20 kV]");
  return unit.electrode_material_gain * unit.geom.actuator_width /
         (4.0 * unit.geom.film_thickness) * zip_wedge_factor(zip_angle) *
         vacuum_permittivity * unit.dielectric.relative_permittivity * voltage *
         voltage;
}

}  // namespace

double default_lever_arm(const PouchGeometry& geom) {
  return 0.5 * (geom.electrode_length + geom.pouch_free_length);
}

void HingeUnit::validate() const {
  geom.validate();
  dielectric.validate();
  if (!std::isfinite(lever_arm) || lever_arm < 0.0)
    fail(ErrorCode::invariant_violation, "lever arm must be non-negative");
  if (!std::isfinite(max_deflection_deg) || max_deflection_deg <= 0.0 ||
      max_deflection_deg > 180.0)
    fail(ErrorCode::invariant_violation,
         "max deflection must lie in (0, 180] degrees");
  if (!std::isfinite(prestress_torque))
    fail(ErrorCode::domain_violation, "prestress torque must be finite");
  if (!std::isfinite(electrode_material_gain) || electrode_material_gain <= 0.0)
    fail(ErrorCode::invariant_violation, "electrode material gain must be positive");
  if (!std::isfinite(min_zip_angle) || min_zip_angle <= 0.0 ||
      min_zip_angle >= pi / 2.0)
    fail(ErrorCode::invariant_violation, "min zip angle must lie in (0, pi/2)");
}

double HingeUnit::lever() const {
  return lever_arm > 0.0 ? lever_arm : default_lever_arm(geom);
}

double theta_from_alpha(const HingeUnit& unit, double zip_angle) {
  unit.validate();
  if (!std::isfinite(zip_angle) || zip_angle < 0.0 || zip_angle > pi / 2.0)
    fail(ErrorCode::domain_violation, "zip angle must lie in [0, pi/2]");
  const double free_fraction =
      unit.geom.pouch_free_length /
      (unit.geom.pouch_free_length + unit.geom.electrode_length);
  const double fold = 2.0 * zip_angle * free_fraction;
  const double fold_max = 2.0 * (pi / 2.0) * free_fraction;
  return unit.max_deflection_deg * (fold / fold_max);
}

double zip_angle_at(const HingeUnit& unit, double theta_deg) {
  if (!std::isfinite(theta_deg) || theta_deg < 0.0 ||
      theta_deg > unit.max_deflection_deg)
    fail(ErrorCode::domain_violation,
         "deflection must lie in [0, max_deflection]");
  return unit.min_zip_angle +
         (pi / 2.0 - unit.min_zip_angle) * (theta_deg / unit.max_deflection_deg);
}

double hinge_torque(const HingeUnit& unit, double voltage, double theta_deg) {
  unit.validate();
  return drive_force(unit, voltage, zip_angle_at(unit, theta_deg)) *
             unit.lever() +
         unit.prestress_torque;
}

TorqueAngleCurve hinge_torque_curve(const HingeUnit& unit, double voltage,
                                    int n_samples) {
  unit.validate();
  if (n_samples < 3)
    fail(ErrorCode::domain_violation, "curve needs at least 3 samples");
  TorqueAngleCurve curve;
  curve.kind = CurveKind::analytic_sampled;
  curve.mode = ForceMode::torque;
  curve.samples.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    // The last sample is pinned to the endpoint so rounding cannot push it
    // past the schedule domain.
    const double theta =
        i == n_samples - 1
            ? unit.max_deflection_deg
            : unit.max_deflection_deg * static_cast<double>(i) / (n_samples - 1);
    curve.samples.push_back({theta, hinge_torque(unit, voltage, theta)});
  }
  return curve;
}

double free_deflection(const HingeUnit& unit, double voltage) {
  unit.validate();
  const double at_end = hinge_torque(unit, voltage, unit.max_deflection_deg);
  if (at_end >= 0.0) return unit.max_deflection_deg;
  double lo = 0.0;
  double hi = unit.max_deflection_deg;
  if (hinge_torque(unit, voltage, lo) < 0.0) return 0.0;
  // Torque is strictly decreasing along the schedule, so the zero is unique.
  while (hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    (hinge_torque(unit, voltage, mid) >= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double grip_force(const HingeUnit& unit, double voltage, double theta_deg) {
  unit.validate();
  const double actuator =
      drive_force(unit, voltage, zip_angle_at(unit, theta_deg)) * unit.lever();
  const double bias = unit.prestress_torque < 0.0 ? -unit.prestress_torque
                                                  : unit.prestress_torque;
  return (actuator + bias) / unit.lever();
}

}  // namespace hasel
