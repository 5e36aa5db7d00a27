#pragma once

#include <map>
#include <string>

#include "hasel/composition.hpp"
#include "hasel/empirics.hpp"

namespace hasel::fixtures {

// Material and drive defaults used by every bundled design. Film thickness
// and fluid permittivity are engineering choices for a thin heat-sealable
// polyester film and a transformer-ester-class dielectric; they are inputs,
// not measured properties of any particular build.
inline constexpr double default_film_thickness = 18e-6;    // m
inline constexpr double default_relative_permittivity = 3.2;
inline constexpr double default_drive_voltage = 8e3;       // V
inline constexpr double default_grasp_angle_deg = 20.0;

DielectricSpec default_dielectric();

/// Calibrated maximum deflection [deg] per pouch free width [mm] for the
/// single-hinge family. Only the 12 mm entry and the peak-at-12 shape are
/// anchored by bench data; the rest are interpolations of that shape.
const std::map<double, double>& pwt_max_deflection_table();

/// Piecewise-linear interpolation of the table, clamped at its ends.
double pwt_max_deflection_deg(double pouch_width_mm);

/// Same interpolation over a caller-supplied table (config override).
double interpolate_width_table(const std::map<double, double>& table,
                               double pouch_width_mm);

/// Single-hinge unit of the width-test family: 10 mm electrode share,
/// the given free width, 40 mm actuator width.
HingeUnit pwt_hinge(double pouch_width_mm);

/// The prestressed (closed-by-default) variant: width-test geometry at
/// 6 mm with a constant opposing bias. The bias magnitude is calibrated so
/// that at the default drive the grip force at the grasp angle exceeds the
/// plain unit's by 14.2%.
HingeUnit inverse_hinge();
double inverse_prestress_torque();

ScorpionUnit scorpion_unit();

FingerConfig single_hinge_config(const std::string& label, double pouch_width_mm);
FingerConfig scorpion_config();
FingerConfig triple_config();
FingerConfig hybrid_config();
FingerConfig plt_config(double electrode_length_mm);
FingerConfig inverse_config();

/// All named designs the CLI resolves without a project config.
const std::map<std::string, FingerConfig>& builtin_designs();

// Bundled reference curves. Each is a quadratic constrained through quoted
// anchor values from bench characterization of these actuator families,
// then sampled on a uniform grid; the anchors are recorded in the CSV
// comment headers. They are reconstructions, never raw measurements.
MeasurementSeries pwt10_series();
MeasurementSeries scorpion_series();
MeasurementSeries triple_series();
MeasurementSeries hybrid_series();
MeasurementSeries plt40_series();
MeasurementSeries plt30_series();

/// Writes every bundled series plus the deflection calibration table into
/// `dir`, creating it if needed. Returns the written file paths.
std::vector<std::string> install_fixtures(const std::string& dir);

/// Default fixture directory: $FIXTURE_DIR when set, else "fixtures".
std::string default_fixture_dir();

}  // namespace hasel::fixtures
