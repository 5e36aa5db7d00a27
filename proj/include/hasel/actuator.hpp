#pragma once

#include <string>

#include "hasel/error.hpp"
#include "hasel/units.hpp"

namespace hasel {

/// Dimensions of one rectangular zipping pouch, all in meters.
///
/// `electrode_length` and `pouch_free_length` run along the contraction
/// axis; their sum is the total pouch dimension on that axis.
/// `actuator_width` runs along the hinge axis and is the width that enters
/// the force law. `film_thickness` is a single polymer film.
struct PouchGeometry {
  double electrode_length = 10e-3;
  double pouch_free_length = 10e-3;
  double actuator_width = 40e-3;
  double film_thickness = 18e-6;

  void validate() const;
};

struct DielectricSpec {
  double relative_permittivity = 3.2;
  std::string name = "transformer-ester fluid";

  void validate() const;
};

/// Drive point of a pouch. `zip_angle` is the interior angle between the
/// films at the zipping front, radians, open interval (0, pi/2).
struct DriveState {
  double voltage = 0.0;
  double zip_angle = deg_to_rad(45.0);

  void validate() const;
};

// V; above this the drive model is out of its supported range.
inline constexpr double max_drive_voltage = 20e3;

// Floor used wherever a search or schedule would otherwise push the zip
// angle into the force law's singularity at zero.
inline constexpr double default_min_zip_angle = deg_to_rad(1.0);

/// Electrode coverage: electrode length over the total pouch dimension
/// along the contraction axis. Always in (0, 1).
double electrode_coverage(const PouchGeometry& geom);

/// cos(a) / (1 - cos(a)) on (0, pi/2]: the geometric gain of the zipping
/// front. Strictly decreasing, diverges toward 0 and reaches 0 at pi/2.
double zip_wedge_factor(double zip_angle);

/// Quasi-static contraction force [N] of a single pouch:
/// width/(4 t) * wedge(a) * eps0 * eps_r * V^2.
double peano_force(const PouchGeometry& geom, const DielectricSpec& dielectric,
                   const DriveState& drive);

/// Fractional shortening of the free pouch length when the cross-section
/// bulges into a circular arc: 1 - sin(a)/a. Strictly increasing on
/// (0, pi/2], bounded by 1 - 2/pi.
double contraction_fraction(double zip_angle);

}  // namespace hasel
