#include "hasel/config.hpp"

#include <fstream>

#include "hasel/fixtures.hpp"
#include "json.hpp"

namespace hasel {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail(ErrorCode::io_error, "cannot parse '" + path + "': " + e.what());
  }
  return j;
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object())
    fail(ErrorCode::bad_quantity, path + " must be an object");
  return j;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& path) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* name : allowed)
      if (key == name) {
        known = true;
        break;
      }
    if (!known)
      fail(ErrorCode::unknown_key, "unknown key '" + path + "." + key + "'");
  }
}

// Dimensioned values are strings with explicit unit suffixes; bare numbers
// are accepted only for dimensionless fields.
double quantity(const json& j, Dimension dim, const std::string& path) {
  if (j.is_string()) return parse_quantity(j.get<std::string>(), dim);
  if (j.is_number()) {
    if (dim == Dimension::dimensionless) return j.get<double>();
    fail(ErrorCode::bad_quantity,
         path + " needs a unit suffix (e.g. \"40 mm\"), got a bare number");
  }
  fail(ErrorCode::bad_quantity, path + " must be a quantity string");
}

double quantity_or(const json& parent, const char* key, Dimension dim,
                   const std::string& path, double fallback) {
  if (!parent.contains(key)) return fallback;
  return quantity(parent.at(key), dim, path + "." + key);
}

std::string string_at(const json& parent, const char* key,
                      const std::string& path) {
  if (!parent.contains(key))
    fail(ErrorCode::missing_key, "missing key '" + path + "." + key + "'");
  const json& j = parent.at(key);
  if (!j.is_string())
    fail(ErrorCode::bad_quantity, path + "." + key + " must be a string");
  return j.get<std::string>();
}

double required_quantity(const json& parent, const char* key, Dimension dim,
                         const std::string& path) {
  if (!parent.contains(key))
    fail(ErrorCode::missing_key, "missing key '" + path + "." + key + "'");
  return quantity(parent.at(key), dim, path + "." + key);
}

HingeUnit parse_hinge(const json& j, const std::string& path,
                      const MaterialDefaults& materials) {
  check_keys(j,
             {"type", "electrode_length", "pouch_free_length", "actuator_width",
              "film_thickness", "relative_permittivity", "max_deflection",
              "lever_arm", "prestress_torque", "electrode_material_gain",
              "min_zip_angle"},
             path);
  HingeUnit unit;
  unit.geom.electrode_length =
      required_quantity(j, "electrode_length", Dimension::length, path);
  unit.geom.pouch_free_length =
      required_quantity(j, "pouch_free_length", Dimension::length, path);
  unit.geom.actuator_width =
      required_quantity(j, "actuator_width", Dimension::length, path);
  unit.geom.film_thickness = quantity_or(j, "film_thickness", Dimension::length,
                                         path, materials.film_thickness);
  unit.dielectric.relative_permittivity =
      quantity_or(j, "relative_permittivity", Dimension::dimensionless, path,
                  materials.relative_permittivity);
  unit.dielectric.name = materials.dielectric_name;
  unit.max_deflection_deg = rad_to_deg(
      required_quantity(j, "max_deflection", Dimension::angle, path));
  unit.lever_arm = quantity_or(j, "lever_arm", Dimension::length, path, 0.0);
  unit.prestress_torque =
      quantity_or(j, "prestress_torque", Dimension::torque, path, 0.0);
  unit.electrode_material_gain = quantity_or(
      j, "electrode_material_gain", Dimension::dimensionless, path, 1.0);
  unit.min_zip_angle = quantity_or(j, "min_zip_angle", Dimension::angle, path,
                                   default_min_zip_angle);
  unit.validate();
  return unit;
}

ScorpionUnit parse_scorpion(const json& j, const std::string& path,
                            const MaterialDefaults& materials) {
  check_keys(j,
             {"type", "base_electrode_height", "pouch_free_lengths",
              "channel_width", "actuator_width", "film_thickness",
              "relative_permittivity", "pouch_max_deflection",
              "electrode_material_gain", "min_zip_angle"},
             path);
  ScorpionUnit unit;
  unit.base_electrode_height =
      required_quantity(j, "base_electrode_height", Dimension::length, path);
  if (!j.contains("pouch_free_lengths") || !j.at("pouch_free_lengths").is_array())
    fail(ErrorCode::missing_key, path + ".pouch_free_lengths must be an array");
  unit.pouch_free_lengths.clear();
  std::size_t i = 0;
  for (const json& item : j.at("pouch_free_lengths"))
    unit.pouch_free_lengths.push_back(quantity(
        item, Dimension::length,
        path + ".pouch_free_lengths[" + std::to_string(i++) + "]"));
  unit.channel_width =
      required_quantity(j, "channel_width", Dimension::length, path);
  unit.actuator_width = quantity_or(j, "actuator_width", Dimension::length, path,
                                    unit.actuator_width);
  unit.film_thickness = quantity_or(j, "film_thickness", Dimension::length, path,
                                    materials.film_thickness);
  unit.dielectric.relative_permittivity =
      quantity_or(j, "relative_permittivity", Dimension::dimensionless, path,
                  materials.relative_permittivity);
  unit.dielectric.name = materials.dielectric_name;
  if (!j.contains("pouch_max_deflection"))
    fail(ErrorCode::missing_key, "missing key '" + path + ".pouch_max_deflection'");
  const json& defl = j.at("pouch_max_deflection");
  unit.pouch_max_deflection_deg.clear();
  if (defl.is_array()) {
    i = 0;
    for (const json& item : defl)
      unit.pouch_max_deflection_deg.push_back(rad_to_deg(quantity(
          item, Dimension::angle,
          path + ".pouch_max_deflection[" + std::to_string(i++) + "]")));
  } else {
    unit.pouch_max_deflection_deg.push_back(rad_to_deg(
        quantity(defl, Dimension::angle, path + ".pouch_max_deflection")));
  }
  unit.electrode_material_gain = quantity_or(
      j, "electrode_material_gain", Dimension::dimensionless, path, 1.0);
  unit.min_zip_angle = quantity_or(j, "min_zip_angle", Dimension::angle, path,
                                   default_min_zip_angle);
  unit.validate();
  return unit;
}

}  // namespace

ProjectConfig default_project_config() {
  ProjectConfig config;
  config.materials = {fixtures::default_film_thickness,
                      fixtures::default_relative_permittivity,
                      fixtures::default_dielectric().name};
  config.drive_voltage = fixtures::default_drive_voltage;
  config.grasp_angle_deg = fixtures::default_grasp_angle_deg;
  config.fixture_dir = fixtures::default_fixture_dir();
  config.width_calibration = fixtures::pwt_max_deflection_table();
  return config;
}

ProjectConfig load_project_config(const std::string& path) {
  const json root = load_json(path);
  require_object(root, "config");
  check_keys(root,
             {"materials", "drive", "grasp", "fixture_dir", "calibration",
              "designs"},
             "config");

  ProjectConfig config = default_project_config();
  if (root.contains("materials")) {
    const json& m = require_object(root.at("materials"), "config.materials");
    check_keys(m, {"film_thickness", "relative_permittivity", "dielectric_name"},
               "config.materials");
    config.materials.film_thickness =
        quantity_or(m, "film_thickness", Dimension::length, "config.materials",
                    config.materials.film_thickness);
    config.materials.relative_permittivity = quantity_or(
        m, "relative_permittivity", Dimension::dimensionless, "config.materials",
        config.materials.relative_permittivity);
    if (m.contains("dielectric_name"))
      config.materials.dielectric_name =
          string_at(m, "dielectric_name", "config.materials");
  }
  if (root.contains("drive")) {
    const json& d = require_object(root.at("drive"), "config.drive");
    check_keys(d, {"voltage"}, "config.drive");
    config.drive_voltage = quantity_or(d, "voltage", Dimension::voltage,
                                       "config.drive", config.drive_voltage);
  }
  if (root.contains("grasp")) {
    const json& g = require_object(root.at("grasp"), "config.grasp");
    check_keys(g, {"angle"}, "config.grasp");
    if (g.contains("angle"))
      config.grasp_angle_deg =
          rad_to_deg(quantity(g.at("angle"), Dimension::angle, "config.grasp.angle"));
  }
  if (root.contains("fixture_dir"))
    config.fixture_dir = string_at(root, "fixture_dir", "config");

  if (root.contains("calibration")) {
    const json& cal = require_object(root.at("calibration"), "config.calibration");
    check_keys(cal, {"pwt_max_deflection"}, "config.calibration");
    if (cal.contains("pwt_max_deflection")) {
      const json& table = require_object(cal.at("pwt_max_deflection"),
                                         "config.calibration.pwt_max_deflection");
      config.width_calibration.clear();
      for (const auto& [key, value] : table.items()) {
        const double width_mm =
            parse_quantity(key, Dimension::length) * 1e3;  // keys like "12 mm"
        const double theta = rad_to_deg(
            quantity(value, Dimension::angle,
                     "config.calibration.pwt_max_deflection." + key));
        config.width_calibration[width_mm] = theta;
      }
      if (config.width_calibration.empty())
        fail(ErrorCode::missing_key,
             "config.calibration.pwt_max_deflection must not be empty");
    }
  }

  if (root.contains("designs")) {
    const json& designs = require_object(root.at("designs"), "config.designs");
    // Two passes so chains can reference any named unit design.
    std::map<std::string, FingerElement> elements;
    for (const auto& [name, def] : designs.items()) {
      const std::string path_name = "config.designs." + name;
      require_object(def, path_name);
      const std::string type = string_at(def, "type", path_name);
      if (type == "hinge")
        elements.emplace(name, parse_hinge(def, path_name, config.materials));
      else if (type == "scorpion")
        elements.emplace(name, parse_scorpion(def, path_name, config.materials));
      else if (type != "chain")
        fail(ErrorCode::unknown_key,
             path_name + ".type must be hinge, scorpion or chain");
    }
    for (const auto& [name, element] : elements) {
      FingerConfig cfg;
      cfg.label = name;
      cfg.units = {element};
      cfg.link_lengths = {std::visit(
          [](const auto& unit) {
            if constexpr (std::is_same_v<std::decay_t<decltype(unit)>, HingeUnit>)
              return unit.lever();
            else
              return 20e-3;
          },
          element)};
      config.designs.emplace(name, std::move(cfg));
    }
    for (const auto& [name, def] : designs.items()) {
      const std::string path_name = "config.designs." + name;
      if (string_at(def, "type", path_name) != "chain") continue;
      check_keys(def, {"type", "units", "link_lengths"}, path_name);
      if (!def.contains("units") || !def.at("units").is_array())
        fail(ErrorCode::missing_key, path_name + ".units must be an array of names");
      FingerConfig cfg;
      cfg.label = name;
      for (const json& item : def.at("units")) {
        if (!item.is_string())
          fail(ErrorCode::bad_quantity, path_name + ".units entries must be names");
        const auto it = elements.find(item.get<std::string>());
        if (it == elements.end())
          fail(ErrorCode::unknown_design,
               path_name + " references unknown unit '" +
                   item.get<std::string>() + "'");
        cfg.units.push_back(it->second);
      }
      if (!def.contains("link_lengths") || !def.at("link_lengths").is_array())
        fail(ErrorCode::missing_key, path_name + ".link_lengths must be an array");
      std::size_t i = 0;
      for (const json& item : def.at("link_lengths"))
        cfg.link_lengths.push_back(
            quantity(item, Dimension::length,
                     path_name + ".link_lengths[" + std::to_string(i++) + "]"));
      cfg.validate();
      config.designs[name] = std::move(cfg);
    }
  }
  return config;
}

FingerConfig resolve_design(const ProjectConfig& config, const std::string& name) {
  if (const auto it = config.designs.find(name); it != config.designs.end())
    return it->second;
  const auto& builtins = fixtures::builtin_designs();
  if (const auto it = builtins.find(name); it != builtins.end()) return it->second;
  fail(ErrorCode::unknown_design, "unknown design '" + name + "'",
       ErrorClass::usage);
}

MissionConfig load_mission_config(const std::string& path) {
  const json root = load_json(path);
  require_object(root, "mission");
  check_keys(root, {"trajectory", "dynamics", "timeline", "dt", "seed"}, "mission");

  MissionConfig config;
  if (!root.contains("trajectory"))
    fail(ErrorCode::missing_key, "missing key 'mission.trajectory'");
  {
    const json& t = require_object(root.at("trajectory"), "mission.trajectory");
    check_keys(t,
               {"approach_speed", "minimum_altitude", "object_position",
                "grasp_radius", "start_offset", "path_curvature"},
               "mission.trajectory");
    config.trajectory.approach_speed = required_quantity(
        t, "approach_speed", Dimension::speed, "mission.trajectory");
    config.trajectory.min_altitude = required_quantity(
        t, "minimum_altitude", Dimension::length, "mission.trajectory");
    config.trajectory.object_position = required_quantity(
        t, "object_position", Dimension::length, "mission.trajectory");
    config.trajectory.grasp_radius = required_quantity(
        t, "grasp_radius", Dimension::length, "mission.trajectory");
    config.trajectory.start_offset =
        quantity_or(t, "start_offset", Dimension::length, "mission.trajectory",
                    config.trajectory.start_offset);
    config.trajectory.path_curvature =
        quantity_or(t, "path_curvature", Dimension::dimensionless,
                    "mission.trajectory", config.trajectory.path_curvature);
    config.trajectory.validate();
  }

  if (!root.contains("dynamics"))
    fail(ErrorCode::missing_key, "missing key 'mission.dynamics'");
  {
    // All dynamics figures are placeholders unless stated, so every one of
    // them must be spelled out in the scenario file.
    const json& d = require_object(root.at("dynamics"), "mission.dynamics");
    check_keys(d, {"closure_time_95", "supply", "untethered_slowdown_factor"},
               "mission.dynamics");
    config.dynamics.closure_time_95 = required_quantity(
        d, "closure_time_95", Dimension::duration, "mission.dynamics");
    config.dynamics.supply =
        mission::supply_from_name(string_at(d, "supply", "mission.dynamics"));
    config.dynamics.untethered_slowdown =
        required_quantity(d, "untethered_slowdown_factor",
                          Dimension::dimensionless, "mission.dynamics");
    config.dynamics.validate();
  }

  if (!root.contains("timeline"))
    fail(ErrorCode::missing_key, "missing key 'mission.timeline'");
  {
    const json& t = require_object(root.at("timeline"), "mission.timeline");
    check_keys(t, {"link_latency", "jitter_bound", "commands"},
               "mission.timeline");
    config.timeline.link_latency = required_quantity(
        t, "link_latency", Dimension::duration, "mission.timeline");
    config.timeline.jitter_bound =
        quantity_or(t, "jitter_bound", Dimension::duration, "mission.timeline", 0.0);
    if (!t.contains("commands") || !t.at("commands").is_array())
      fail(ErrorCode::missing_key, "mission.timeline.commands must be an array");
    std::size_t i = 0;
    for (const json& item : t.at("commands")) {
      const std::string cmd_path =
          "mission.timeline.commands[" + std::to_string(i++) + "]";
      require_object(item, cmd_path);
      check_keys(item, {"time", "command", "duty"}, cmd_path);
      const double time =
          required_quantity(item, "time", Dimension::duration, cmd_path);
      const std::string name = string_at(item, "command", cmd_path);
      mission::GripperCommand command;
      if (name == "open")
        command = mission::GripperCommand::open;
      else if (name == "close")
        command = mission::GripperCommand::close;
      else
        fail(ErrorCode::unknown_command,
             cmd_path + ".command must be 'open' or 'close'");
      double duty = 255.0;
      if (item.contains("duty")) {
        duty = quantity(item.at("duty"), Dimension::dimensionless,
                        cmd_path + ".duty");
        if (duty < 0.0 || duty > 255.0)
          fail(ErrorCode::bad_quantity, cmd_path + ".duty must lie in [0, 255]");
      }
      config.timeline.commands.push_back(
          {time, mission::encode_frame(command, static_cast<std::uint8_t>(duty))});
    }
    config.timeline.validate();
  }

  config.dt = required_quantity(root, "dt", Dimension::duration, "mission");
  config.seed = 0;
  if (root.contains("seed")) {
    const json& s = root.at("seed");
    if (!s.is_number_unsigned())
      fail(ErrorCode::bad_quantity, "mission.seed must be a non-negative integer");
    config.seed = s.get<std::uint64_t>();
  }
  return config;
}

}  // namespace hasel
