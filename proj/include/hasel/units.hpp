#pragma once

#include <string_view>

namespace hasel {

inline constexpr double pi = 3.14159265358979323846;

// F/m
inline constexpr double vacuum_permittivity = 8.8541878128e-12;

// m/s^2
inline constexpr double standard_gravity = 9.81;

constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

enum class Dimension {
  length,
  voltage,
  angle,
  mass,
  force,
  torque,
  duration,
  speed,
  dimensionless,
};

const char* dimension_name(Dimension dim);

/// Parses "<number> <unit>" with a mandatory unit suffix for dimensioned
/// quantities ("40 mm", "8 kV", "20 deg", "76 g", "0.15 s") and returns the
/// value in SI base units. Dimensionless values must be bare numbers.
double parse_quantity(std::string_view text, Dimension expected);

}  // namespace hasel
