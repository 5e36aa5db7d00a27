// Command-line front end for the gripper modeling toolkit. All numeric
// options carry their unit in the option name (mm, kV, deg, g, N) and are
// converted to SI at this boundary.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hasel/composition.hpp"
#include "hasel/config.hpp"
#include "hasel/empirics.hpp"
#include "hasel/explorer.hpp"
#include "hasel/fixtures.hpp"
#include "hasel/mission.hpp"

namespace {

using namespace hasel;

struct CommonOptions {
  std::string config_path;
  double voltage_kv = fixtures::default_drive_voltage / 1e3;
};

ProjectConfig load_config(const CommonOptions& common) {
  if (common.config_path.empty()) return default_project_config();
  return load_project_config(common.config_path);
}

void write_or_print(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot write '" + path + "'");
  out << text;
}

std::string curve_csv(const TorqueAngleCurve& curve, const std::string& title) {
  std::string out;
  out += "# " + title + "\n";
  out += "# force_mode: " + std::string(to_string(curve.mode)) + "\n";
  out += "theta_deg,value\n";
  char buf[80];
  for (const CurvePoint& p : curve.samples) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", p.theta_deg, p.value);
    out += buf;
  }
  return out;
}

std::string fit_text(const QuadraticFit& fit) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "c0=%.9g c1=%.9g c2=%.9g rms=%.3g domain=[%g, %g] deg\n", fit.c0,
                fit.c1, fit.c2, fit.rms_residual, fit.theta_min, fit.theta_max);
  std::string out = buf;
  if (const auto zero = fit.zero_crossing()) {
    std::snprintf(buf, sizeof buf, "zero_crossing_deg=%.4g\n", *zero);
    out += buf;
  }
  return out;
}

std::string fit_csv(const QuadraticFit& fit) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "c0,c1,c2,rms,theta_min_deg,theta_max_deg\n"
                                 "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                fit.c0, fit.c1, fit.c2, fit.rms_residual, fit.theta_min,
                fit.theta_max);
  return buf;
}

std::string crossover_text(const CrossoverResult& result) {
  if (result.degenerate)
    return "degenerate-overlap: the curves coincide on the common domain\n";
  if (result.points.empty()) return "no crossover on the common domain\n";
  std::string out;
  char buf[96];
  for (const CrossoverPoint& p : result.points) {
    std::snprintf(buf, sizeof buf, "crossover theta_deg=%.4g value=%.6g\n",
                  p.theta_deg, p.value);
    out += buf;
  }
  return out;
}

std::string crossover_csv(const CrossoverResult& result) {
  std::string out = "theta_deg,value\n";
  char buf[96];
  for (const CrossoverPoint& p : result.points) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", p.theta_deg, p.value);
    out += buf;
  }
  return out;
}

std::string ratio_text(const RatioReport& report, const std::string& a,
                       const std::string& b) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf, "comparison of %s against baseline %s (%s)\n",
                b.c_str(), a.c_str(), to_string(report.mode));
  out += buf;
  std::snprintf(buf, sizeof buf, "max_value_change_pct=%+.3g\n",
                report.max_value_change_pct);
  out += buf;
  std::snprintf(buf, sizeof buf, "max_deflection_change_pct=%+.3g\n",
                report.max_deflection_change_pct);
  out += buf;
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{
      "Quasi-static modeling, design exploration and mission simulation for "
      "electrostatic zipping-pouch hinge grippers"};
  app.require_subcommand(1);

  CommonOptions common;
  app.add_option("--config", common.config_path,
                 "Project config JSON (strict keys, unit-suffixed values)");

  // force
  auto* force_cmd =
      app.add_subcommand("force", "Evaluate the pouch force law; prints newtons");
  double width_mm = 40.0, thickness_um = 18.0, eps_r = 3.2, voltage_kv = 8.0,
         alpha_deg = 45.0;
  force_cmd->add_option("--actuator-width-mm", width_mm, "Width along the hinge axis [mm]");
  force_cmd->add_option("--film-thickness-um", thickness_um, "Single film thickness [um]");
  force_cmd->add_option("--eps-r", eps_r, "Relative permittivity of the dielectric");
  force_cmd->add_option("--voltage-kv", voltage_kv, "Drive voltage [kV]");
  force_cmd->add_option("--alpha-deg", alpha_deg, "Zip angle [deg], in (0, 90)");

  // curve
  auto* curve_cmd = app.add_subcommand("curve", "Emit a design's tip-force curve as CSV");
  std::string curve_design;
  int curve_samples = 101;
  std::string curve_output;
  double curve_voltage_kv = fixtures::default_drive_voltage / 1e3;
  curve_cmd->add_option("design", curve_design, "Design name")->required();
  curve_cmd->add_option("--samples", curve_samples, "Number of samples");
  curve_cmd->add_option("--voltage-kv", curve_voltage_kv, "Drive voltage [kV]");
  curve_cmd->add_option("--output", curve_output, "Output CSV path (default stdout)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep a design parameter");
  std::string sweep_param = "pouch_free_width", sweep_design = "pwt10",
              sweep_values, sweep_output;
  double sweep_min = std::nan(""), sweep_max = std::nan(""), sweep_step = std::nan("");
  double sweep_voltage_kv = fixtures::default_drive_voltage / 1e3;
  std::string sweep_objective = "force_at_angle";
  double sweep_obj_theta = fixtures::default_grasp_angle_deg;
  double sweep_obj_force_n = 0.1, sweep_obj_mu = 1.0;
  int sweep_obj_toes = 4;
  bool sweep_serial = false, sweep_no_calibration = false;
  sweep_cmd->add_option("--param", sweep_param,
                        "pouch_free_width | electrode_length | voltage");
  sweep_cmd->add_option("--design", sweep_design, "Base design name");
  sweep_cmd->add_option("--values", sweep_values,
                        "Comma-separated values [mm or kV]");
  sweep_cmd->add_option("--min", sweep_min, "Range start [mm or kV]");
  sweep_cmd->add_option("--max", sweep_max, "Range end [mm or kV]");
  sweep_cmd->add_option("--step", sweep_step, "Range step [mm or kV]");
  sweep_cmd->add_option("--voltage-kv", sweep_voltage_kv, "Fixed drive voltage [kV]");
  sweep_cmd->add_option("--objective", sweep_objective,
                        "force_at_angle | deflection_at_force | max_payload");
  sweep_cmd->add_option("--at-theta-deg", sweep_obj_theta, "Angle for force_at_angle [deg]");
  sweep_cmd->add_option("--at-force-n", sweep_obj_force_n, "Force for deflection_at_force [N]");
  sweep_cmd->add_option("--mu", sweep_obj_mu, "Friction coefficient for max_payload");
  sweep_cmd->add_option("--toes", sweep_obj_toes, "Toe count for max_payload");
  sweep_cmd->add_flag("--serial", sweep_serial, "Evaluate rows serially");
  sweep_cmd->add_flag("--no-calibration", sweep_no_calibration,
                      "Do not refresh max deflection from the width table");
  sweep_cmd->add_option("--output", sweep_output, "Output CSV path (default stdout)");

  // optimize
  auto* opt_cmd = app.add_subcommand("optimize", "Grid + golden-section design search");
  std::string opt_design = "pwt10";
  std::vector<double> opt_width_mm{6.0, 14.0}, opt_length_mm{40.0, 40.0},
      opt_voltage_kv{8.0, 8.0};
  int opt_budget = 120;
  std::string opt_objective = "force_at_angle";
  double opt_obj_theta = fixtures::default_grasp_angle_deg;
  double opt_obj_force_n = 0.1, opt_obj_mu = 1.0;
  int opt_obj_toes = 4;
  opt_cmd->add_option("--design", opt_design, "Base design name");
  opt_cmd->add_option("--width-mm", opt_width_mm, "Pouch free width bounds [mm]")
      ->expected(2);
  opt_cmd->add_option("--length-mm", opt_length_mm, "Electrode length bounds [mm]")
      ->expected(2);
  opt_cmd->add_option("--voltage-kv", opt_voltage_kv, "Voltage bounds [kV]")
      ->expected(2);
  opt_cmd->add_option("--budget", opt_budget, "Evaluation budget");
  opt_cmd->add_option("--objective", opt_objective,
                      "force_at_angle | deflection_at_force | max_payload");
  opt_cmd->add_option("--at-theta-deg", opt_obj_theta, "Angle for force_at_angle [deg]");
  opt_cmd->add_option("--at-force-n", opt_obj_force_n, "Force for deflection_at_force [N]");
  opt_cmd->add_option("--mu", opt_obj_mu, "Friction coefficient for max_payload");
  opt_cmd->add_option("--toes", opt_obj_toes, "Toe count for max_payload");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Least-squares quadratic fit of a series CSV");
  std::string fit_path, fit_format = "text";
  fit_cmd->add_option("csv", fit_path, "Input CSV (theta_deg,value[,stderr])")->required();
  fit_cmd->add_option("--format", fit_format, "text | csv");

  // crossover
  auto* cross_cmd = app.add_subcommand("crossover", "Intersect two fitted series");
  std::string cross_a, cross_b, cross_format = "text";
  cross_cmd->add_option("csvA", cross_a, "First series CSV")->required();
  cross_cmd->add_option("csvB", cross_b, "Second series CSV")->required();
  cross_cmd->add_option("--format", cross_format, "text | csv");

  // compare
  auto* compare_cmd = app.add_subcommand(
      "compare", "Curves, crossover and ratio report for two designs or CSVs");
  std::string compare_a, compare_b, compare_prefix;
  int compare_samples = 101;
  double compare_voltage_kv = fixtures::default_drive_voltage / 1e3;
  compare_cmd->add_option("a", compare_a, "Design name or series CSV path")->required();
  compare_cmd->add_option("b", compare_b, "Design name or series CSV path")->required();
  compare_cmd->add_option("--samples", compare_samples, "Samples for analytic curves");
  compare_cmd->add_option("--voltage-kv", compare_voltage_kv, "Drive voltage [kV]");
  compare_cmd->add_option("--output-prefix", compare_prefix,
                          "Write <prefix>_a.csv and <prefix>_b.csv");

  // grasp
  auto* grasp_cmd = app.add_subcommand("grasp", "Friction-grip payload feasibility");
  double grasp_mass_g = 76.0, grasp_force_n = 0.2, grasp_mu = 1.0;
  int grasp_toes = 4;
  grasp_cmd->add_option("--mass-g", grasp_mass_g, "Object mass [g]");
  grasp_cmd->add_option("--toes", grasp_toes, "Number of toes");
  grasp_cmd->add_option("--force-n", grasp_force_n, "Normal force per toe [N]");
  grasp_cmd->add_option("--mu", grasp_mu, "Friction coefficient");

  // mission
  auto* mission_cmd = app.add_subcommand("mission", "Simulate the swoop grasp scenario");
  std::string mission_config, mission_trace;
  mission_cmd->add_option("--config", mission_config, "Mission scenario JSON")->required();
  mission_cmd->add_option("--trace", mission_trace, "Write the step trace CSV here");

  // fixtures
  auto* fixtures_cmd = app.add_subcommand("fixtures", "Manage bundled fixture data");
  auto* install_cmd = fixtures_cmd->add_subcommand(
      "install", "Write the bundled fixture CSVs with construction headers");
  std::string fixtures_dir;
  install_cmd->add_option("--dir", fixtures_dir,
                          "Target directory (default $FIXTURE_DIR or ./fixtures)");
  fixtures_cmd->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  auto make_objective = [](const std::string& kind, double theta, double force,
                           double mu, int toes) {
    Objective objective;
    if (kind == "force_at_angle")
      objective.kind = Objective::Kind::force_at_angle;
    else if (kind == "deflection_at_force")
      objective.kind = Objective::Kind::deflection_at_force;
    else if (kind == "max_payload")
      objective.kind = Objective::Kind::max_payload;
    else
      fail(ErrorCode::unknown_parameter, "unknown objective '" + kind + "'",
           ErrorClass::usage);
    objective.theta_deg = theta;
    objective.force_n = force;
    objective.friction_mu = mu;
    objective.n_toes = toes;
    return objective;
  };

  if (force_cmd->parsed()) {
    PouchGeometry geom;
    geom.actuator_width = width_mm * 1e-3;
    geom.film_thickness = thickness_um * 1e-6;
    const DielectricSpec diel{eps_r, "cli"};
    const DriveState drive{voltage_kv * 1e3, deg_to_rad(alpha_deg)};
    std::printf("%.6g\n", peano_force(geom, diel, drive));
    return 0;
  }

  if (curve_cmd->parsed()) {
    const ProjectConfig config = load_config(common);
    const FingerConfig design = resolve_design(config, curve_design);
    const TorqueAngleCurve curve =
        chain_tip_force_curve(design, curve_voltage_kv * 1e3, curve_samples);
    char title[128];
    std::snprintf(title, sizeof title, "design: %s at %g kV", curve_design.c_str(),
                  curve_voltage_kv);
    write_or_print(curve_csv(curve, title), curve_output);
    return 0;
  }

  if (sweep_cmd->parsed()) {
    const ProjectConfig config = load_config(common);
    SweepSpec spec;
    spec.parameter = sweep_parameter_from_name(sweep_param);
    spec.base = resolve_design(config, sweep_design);
    spec.voltage = sweep_voltage_kv * 1e3;
    spec.use_width_calibration = !sweep_no_calibration;
    spec.width_calibration = config.width_calibration;
    spec.grasp_angle_deg = config.grasp_angle_deg;
    const double unit_scale =
        spec.parameter == SweepParameter::voltage ? 1e3 : 1e-3;
    if (!sweep_values.empty()) {
      std::stringstream ss(sweep_values);
      std::string token;
      while (std::getline(ss, token, ','))
        spec.values.push_back(std::stod(token) * unit_scale);
    } else {
      if (std::isnan(sweep_min) || std::isnan(sweep_max) || std::isnan(sweep_step) ||
          sweep_step <= 0.0)
        fail(ErrorCode::unknown_parameter,
             "sweep needs --values or --min/--max/--step", ErrorClass::usage);
      for (double v = sweep_min; v <= sweep_max + 1e-12; v += sweep_step)
        spec.values.push_back(v * unit_scale);
    }
    const Objective objective =
        make_objective(sweep_objective, sweep_obj_theta, sweep_obj_force_n,
                       sweep_obj_mu, sweep_obj_toes);
    const std::vector<SweepRow> rows = run_sweep(spec, objective, !sweep_serial);
    write_or_print(sweep_table_csv(rows), sweep_output);
    if (!sweep_output.empty()) {
      std::size_t failed = 0;
      std::size_t best = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].status != "ok") ++failed;
        if (rows[i].status == "ok" &&
            (rows[best].status != "ok" ||
             rows[i].objective_value > rows[best].objective_value))
          best = i;
      }
      std::printf("swept %s over %zu values -> %s; best objective %.6g at "
                  "%.6g; %zu failed row(s)\n",
                  to_string(spec.parameter), rows.size(), sweep_output.c_str(),
                  rows[best].objective_value, rows[best].parameter_value,
                  failed);
    }
    return 0;
  }

  if (opt_cmd->parsed()) {
    const ProjectConfig config = load_config(common);
    DesignBounds bounds;
    bounds.pouch_free_width = {opt_width_mm[0] * 1e-3, opt_width_mm[1] * 1e-3};
    bounds.electrode_length = {opt_length_mm[0] * 1e-3, opt_length_mm[1] * 1e-3};
    bounds.voltage = {opt_voltage_kv[0] * 1e3, opt_voltage_kv[1] * 1e3};
    const Objective objective = make_objective(
        opt_objective, opt_obj_theta, opt_obj_force_n, opt_obj_mu, opt_obj_toes);
    const OptimizeResult result =
        optimize(bounds, resolve_design(config, opt_design), objective, opt_budget,
                 true, config.grasp_angle_deg);
    std::printf("best pouch_free_width_mm=%.6g electrode_length_mm=%.6g "
                "voltage_kv=%.6g objective=%.9g evaluations=%zu\n",
                result.best.pouch_free_width * 1e3,
                result.best.electrode_length * 1e3, result.best.voltage / 1e3,
                result.best_value, result.trace.size());
    return 0;
  }

  if (fit_cmd->parsed()) {
    const QuadraticFit fit = fit_quadratic(load_series(fit_path));
    std::cout << (fit_format == "csv" ? fit_csv(fit) : fit_text(fit));
    return 0;
  }

  if (cross_cmd->parsed()) {
    const MeasurementSeries a = load_series(cross_a);
    const MeasurementSeries b = load_series(cross_b);
    const CrossoverResult result =
        crossover_from_fits(fit_quadratic(a), fit_quadratic(b));
    std::cout << (cross_format == "csv" ? crossover_csv(result)
                                        : crossover_text(result));
    return 0;
  }

  if (compare_cmd->parsed()) {
    const ProjectConfig config = load_config(common);
    const bool file_route = std::filesystem::exists(compare_a) &&
                            std::filesystem::exists(compare_b);
    MeasurementSeries sa, sb;
    CrossoverResult cross;
    if (file_route) {
      sa = load_series(compare_a);
      sb = load_series(compare_b);
      const QuadraticFit fa = fit_quadratic(sa);
      const QuadraticFit fb = fit_quadratic(sb);
      cross = crossover_from_fits(fa, fb);
      std::cout << "fit a: " << fit_text(fa);
      std::cout << "fit b: " << fit_text(fb);
    } else {
      const double voltage = compare_voltage_kv * 1e3;
      const TorqueAngleCurve ca = chain_tip_force_curve(
          resolve_design(config, compare_a), voltage, compare_samples);
      const TorqueAngleCurve cb = chain_tip_force_curve(
          resolve_design(config, compare_b), voltage, compare_samples);
      sa = series_from_curve(ca, compare_a);
      sb = series_from_curve(cb, compare_b);
      cross = crossover(ca, cb);
    }
    std::cout << crossover_text(cross);
    std::cout << ratio_text(ratio_report(sa, sb), compare_a, compare_b);
    if (!compare_prefix.empty()) {
      write_series_csv(sa, compare_prefix + "_a.csv");
      write_series_csv(sb, compare_prefix + "_b.csv");
    }
    return 0;
  }

  if (grasp_cmd->parsed()) {
    GraspCase grasp_case;
    grasp_case.object_mass = grasp_mass_g * 1e-3;
    grasp_case.n_toes = grasp_toes;
    grasp_case.normal_force_per_toe = grasp_force_n;
    grasp_case.friction_mu = grasp_mu;
    const GraspReport report = grasp_feasibility(grasp_case);
    std::printf("holds=%s required_mu=%.3f max_payload_g=%.2f\n",
                report.holds ? "true" : "false", report.required_mu,
                report.max_payload_kg * 1e3);
    return 0;
  }

  if (mission_cmd->parsed()) {
    const MissionConfig config = load_mission_config(mission_config);
    const mission::SimResult result =
        mission::simulate(config.trajectory, config.timeline, config.dynamics,
                          config.dt, config.seed);
    std::printf("outcome=%s window=[%.4g, %.4g] s steps=%zu\n",
                to_string(result.outcome), result.window_begin,
                result.window_end, result.trace.size());
    if (!mission_trace.empty())
      write_or_print(trace_csv(result), mission_trace);
    return 0;
  }

  if (install_cmd->parsed()) {
    const std::string dir =
        !fixtures_dir.empty() ? fixtures_dir : fixtures::default_fixture_dir();
    for (const std::string& path : fixtures::install_fixtures(dir))
      std::printf("wrote %s\n", path.c_str());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: code=%s class=%d message=\"%s\"\n",
                 to_string(e.code()), static_cast<int>(e.error_class()),
                 e.what());
    return static_cast<int>(e.error_class());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: code=internal message=\"%s\"\n", e.what());
    return 3;
  }
}
