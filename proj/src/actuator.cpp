#include "hasel/actuator.hpp"

#include <cmath>

namespace hasel {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v))
    fail(ErrorCode::domain_violation, std::string(name) + " must be finite");
}

}  // namespace

void PouchGeometry::validate() const {
  require_finite(electrode_length, "electrode_length");
  require_finite(pouch_free_length, "pouch_free_length");
  require_finite(actuator_width, "actuator_width");
  require_finite(film_thickness, "film_thickness");
  if (electrode_length <= 0.0 || pouch_free_length <= 0.0 ||
      actuator_width <= 0.0 || film_thickness <= 0.0)
    fail(ErrorCode::invariant_violation, "pouch dimensions must be positive");
  if (film_thickness >= 1e-3)
    fail(ErrorCode::invariant_violation, "film thickness must be below 1 mm");
  if (electrode_length >= 1.0 || pouch_free_length >= 1.0)
    fail(ErrorCode::invariant_violation,
         "pouch dimensions must be below 1 m; this is a desk-scale model");
}

void DielectricSpec::validate() const {
  require_finite(relative_permittivity, "relative_permittivity");
  if (relative_permittivity < 1.0)
    fail(ErrorCode::invariant_violation, "relative permittivity must be >= 1");
}

void DriveState::validate() const {
  require_finite(voltage, "voltage");
  require_finite(zip_angle, "zip_angle");
  if (voltage < 0.0 || voltage > max_drive_voltage)
    fail(ErrorCode::invariant_violation, "voltage must lie in [0, 20 kV]");
  if (zip_angle <= 0.0 || zip_angle >= pi / 2.0)
    fail(ErrorCode::domain_violation,
         "zip angle must lie strictly inside (0, pi/2)");
}

double electrode_coverage(const PouchGeometry& geom) {
  geom.validate();
  return geom.electrode_length /
         (geom.electrode_length + geom.pouch_free_length);
}

double zip_wedge_factor(double zip_angle) {
  if (!std::isfinite(zip_angle) || zip_angle <= 0.0 || zip_angle > pi / 2.0)
    fail(ErrorCode::domain_violation, "zip angle must lie in (0, pi/2]");
  const double c = std::cos(zip_angle);
  return c / (1.0 - c);
}

double peano_force(const PouchGeometry& geom, const DielectricSpec& dielectric,
                   const DriveState& drive) {
  geom.validate();
  dielectric.validate();
  drive.validate();
  return geom.actuator_width / (4.0 * geom.film_thickness) *
         zip_wedge_factor(drive.zip_angle) * vacuum_permittivity *
         dielectric.relative_permittivity * drive.voltage * drive.voltage;
}

double contraction_fraction(double zip_angle) {
  if (!std::isfinite(zip_angle) || zip_angle <= 0.0 || zip_angle > pi / 2.0)
    fail(ErrorCode::domain_violation, "zip angle must lie in (0, pi/2]");
  return 1.0 - std::sin(zip_angle) / zip_angle;
}

}  // namespace hasel
