#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hasel/composition.hpp"

namespace hasel {

enum class SweepParameter { pouch_free_width, electrode_length, voltage };

const char* to_string(SweepParameter parameter);
SweepParameter sweep_parameter_from_name(const std::string& name);

/// One-dimensional design sweep over a base finger configuration.
/// Values are SI (meters or volts, matching the parameter).
struct SweepSpec {
  SweepParameter parameter = SweepParameter::pouch_free_width;
  std::vector<double> values;
  FingerConfig base;
  double voltage = 8e3;
  // When sweeping the pouch free width, refresh each unit's maximum
  // deflection from the calibrated width table; an empty map falls back
  // to the bundled table.
  bool use_width_calibration = true;
  std::map<double, double> width_calibration;
  double grasp_angle_deg = 20.0;

  void validate() const;
};

struct Objective {
  enum class Kind { force_at_angle, deflection_at_force, max_payload };

  Kind kind = Kind::force_at_angle;
  double theta_deg = 20.0;   // force_at_angle
  double force_n = 0.1;      // deflection_at_force
  double friction_mu = 1.0;  // max_payload
  int n_toes = 4;            // max_payload

  void validate() const;
};

struct SweepRow {
  double parameter_value;
  double objective_value;
  double free_deflection_deg;
  double peak_force_n;  // grip force at the configured grasp angle
  std::string status;   // "ok" or an error code
};

/// One row per requested value, in request order. Rows that fail keep
/// their error code in `status`; the sweep never aborts part-way. Rows are
/// independent pure evaluations and may run concurrently; the assembled
/// table is identical either way.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const Objective& objective,
                                bool parallel = true);

/// CSV with header `param,objective,free_deflection_deg,peak_force_N,status`.
std::string sweep_table_csv(const std::vector<SweepRow>& rows);

FingerConfig apply_parameter(const FingerConfig& base, SweepParameter parameter,
                             double value, bool use_width_calibration,
                             const std::map<double, double>& width_calibration = {});

double objective_value(const FingerConfig& cfg, double voltage,
                       const Objective& objective, double grasp_angle_deg);

struct DesignPoint {
  double pouch_free_width;
  double electrode_length;
  double voltage;
};

struct ParameterRange {
  double lo;
  double hi;
};

struct DesignBounds {
  ParameterRange pouch_free_width{10e-3, 10e-3};
  ParameterRange electrode_length{40e-3, 40e-3};
  ParameterRange voltage{8e3, 8e3};
};

struct Evaluation {
  DesignPoint point;
  double value;
  bool failed;
};

struct OptimizeResult {
  DesignPoint best;
  double best_value;
  std::vector<Evaluation> trace;
};

/// Maximizes over the box: coarse grid first, then coordinate-wise
/// golden-section refinement of the continuous parameters until each
/// interval shrinks below 1% of its range or the evaluation budget runs
/// out. Deterministic for fixed bounds and budget; the returned best is
/// the best point of the whole trace.
OptimizeResult optimize(const DesignBounds& bounds,
                        const std::function<double(const DesignPoint&)>& objective,
                        int budget);

OptimizeResult optimize(const DesignBounds& bounds, const FingerConfig& base,
                        const Objective& objective, int budget,
                        bool use_width_calibration = true,
                        double grasp_angle_deg = 20.0);

/// Friction-grip closure for payload feasibility.
struct GraspCase {
  double object_mass = 0.0;  // kg; zero allowed (trivially holds)
  int n_toes = 4;
  double normal_force_per_toe = 0.2;  // N
  double friction_mu = 1.0;
  double gravity = standard_gravity;

  void validate() const;
};

struct GraspReport {
  double required_mu;
  double max_payload_kg;
  bool holds;
};

/// holds iff n * F * mu >= m * g; required_mu = m g / (n F);
/// max_payload = n F mu / g.
GraspReport grasp_feasibility(const GraspCase& grasp_case);

}  // namespace hasel
