#pragma once

#include <map>
#include <string>

#include "hasel/composition.hpp"
#include "hasel/mission.hpp"

namespace hasel {

struct MaterialDefaults {
  double film_thickness;
  double relative_permittivity;
  std::string dielectric_name;
};

/// Project-wide settings plus named design definitions. Loaded from a
/// strict JSON file: every dimensioned value is a string with an explicit
/// unit suffix, and unknown keys are rejected.
struct ProjectConfig {
  MaterialDefaults materials;
  double drive_voltage;
  double grasp_angle_deg;
  std::string fixture_dir;
  // Pouch free width [mm] -> max deflection [deg]; the bundled table
  // unless the config overrides it.
  std::map<double, double> width_calibration;
  std::map<std::string, FingerConfig> designs;
};

ProjectConfig default_project_config();
ProjectConfig load_project_config(const std::string& path);

/// Looks the name up in the config's designs, then in the builtin set.
FingerConfig resolve_design(const ProjectConfig& config, const std::string& name);

struct MissionConfig {
  mission::SwoopTrajectory trajectory;
  mission::ActuationDynamics dynamics;
  mission::CommandTimeline timeline;
  double dt;
  std::uint64_t seed;
};

/// Mission scenario file. Closure time, supply, slowdown factor, link
/// latency and dt carry no defaults here: a reported result must state
/// them explicitly.
MissionConfig load_mission_config(const std::string& path);

}  // namespace hasel
