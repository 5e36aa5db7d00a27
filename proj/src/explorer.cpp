#include "hasel/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>

#include "hasel/fixtures.hpp"

namespace hasel {

const char* to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::pouch_free_width: return "pouch_free_width";
    case SweepParameter::electrode_length: return "electrode_length";
    case SweepParameter::voltage: return "voltage";
  }
  return "?";
}

SweepParameter sweep_parameter_from_name(const std::string& name) {
  if (name == "pouch_free_width") return SweepParameter::pouch_free_width;
  if (name == "electrode_length") return SweepParameter::electrode_length;
  if (name == "voltage") return SweepParameter::voltage;
  fail(ErrorCode::unknown_parameter, "unknown sweep parameter '" + name + "'",
       ErrorClass::usage);
}

void SweepSpec::validate() const {
  base.validate();
  if (values.empty())
    fail(ErrorCode::invariant_violation, "sweep needs a non-empty value set");
  if (!std::isfinite(voltage) || voltage < 0.0 || voltage > max_drive_voltage)
    fail(ErrorCode::invariant_violation, "voltage must lie in [0, 20 kV]");
  if (!std::isfinite(grasp_angle_deg) || grasp_angle_deg < 0.0 ||
      grasp_angle_deg > 180.0)
    fail(ErrorCode::invariant_violation, "grasp angle must lie in [0, 180] deg");
}

void Objective::validate() const {
  switch (kind) {
    case Kind::force_at_angle:
      if (!std::isfinite(theta_deg) || theta_deg < 0.0 || theta_deg > 180.0)
        fail(ErrorCode::invariant_violation, "objective angle must lie in [0, 180]");
      break;
    case Kind::deflection_at_force:
      if (!std::isfinite(force_n) || force_n <= 0.0)
        fail(ErrorCode::invariant_violation, "objective force must be positive");
      break;
    case Kind::max_payload:
      if (!std::isfinite(friction_mu) || friction_mu <= 0.0)
        fail(ErrorCode::invariant_violation, "friction coefficient must be positive");
      if (n_toes < 1)
        fail(ErrorCode::invariant_violation, "payload objective needs >= 1 toes");
      break;
  }
}

FingerConfig apply_parameter(const FingerConfig& base, SweepParameter parameter,
                             double value, bool use_width_calibration,
                             const std::map<double, double>& width_calibration) {
  FingerConfig cfg = base;
  if (parameter == SweepParameter::voltage) return cfg;
  auto calibrated = [&](double width) {
    return width_calibration.empty()
               ? fixtures::pwt_max_deflection_deg(width * 1e3)
               : fixtures::interpolate_width_table(width_calibration, width * 1e3);
  };
  for (FingerElement& element : cfg.units) {
    if (HingeUnit* hinge = std::get_if<HingeUnit>(&element)) {
      if (parameter == SweepParameter::pouch_free_width) {
        hinge->geom.pouch_free_length = value;
        hinge->lever_arm = 0.0;  // re-derive from the new geometry
        if (use_width_calibration)
          hinge->max_deflection_deg = calibrated(value);
      } else {
        hinge->geom.actuator_width = value;
      }
    } else {
      ScorpionUnit& scorpion = std::get<ScorpionUnit>(element);
      if (parameter == SweepParameter::pouch_free_width) {
        std::fill(scorpion.pouch_free_lengths.begin(),
                  scorpion.pouch_free_lengths.end(), value);
        if (use_width_calibration)
          scorpion.pouch_max_deflection_deg = {calibrated(value)};
      } else {
        scorpion.actuator_width = value;
      }
    }
  }
  return cfg;
}

namespace {

double grip_force_at(const FingerConfig& cfg, double voltage, double theta_deg) {
  const double span = chain_free_deflection(cfg, voltage);
  if (theta_deg > span) return 0.0;  // the finger cannot reach that angle
  return chain_tip_force(cfg, voltage, theta_deg);
}

// Largest total deflection at which the tip force still meets the target;
// the tip force is non-increasing, so bisection applies.
double deflection_at_force(const FingerConfig& cfg, double voltage,
                           double force_n) {
  const double span = chain_free_deflection(cfg, voltage);
  if (chain_tip_force(cfg, voltage, 0.0) < force_n) return 0.0;
  if (chain_tip_force(cfg, voltage, span) >= force_n) return span;
  double lo = 0.0, hi = span;
  while (hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    (chain_tip_force(cfg, voltage, mid) >= force_n ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double objective_value(const FingerConfig& cfg, double voltage,
                       const Objective& objective, double grasp_angle_deg) {
  objective.validate();
  switch (objective.kind) {
    case Objective::Kind::force_at_angle:
      return grip_force_at(cfg, voltage, objective.theta_deg);
    case Objective::Kind::deflection_at_force:
      return deflection_at_force(cfg, voltage, objective.force_n);
    case Objective::Kind::max_payload: {
      const double force = grip_force_at(cfg, voltage, grasp_angle_deg);
      return objective.n_toes * force * objective.friction_mu / standard_gravity;
    }
  }
  fail(ErrorCode::unknown_parameter, "unhandled objective kind");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const Objective& objective,
                                bool parallel) {
  spec.validate();
  objective.validate();

  auto evaluate_row = [&](double value) -> SweepRow {
    SweepRow row{value, std::nan(""), std::nan(""), std::nan(""), "ok"};
    try {
      const double voltage =
          spec.parameter == SweepParameter::voltage ? value : spec.voltage;
      const FingerConfig cfg =
          apply_parameter(spec.base, spec.parameter, value,
                          spec.use_width_calibration, spec.width_calibration);
      row.free_deflection_deg = chain_free_deflection(cfg, voltage);
      row.peak_force_n = grip_force_at(cfg, voltage, spec.grasp_angle_deg);
      row.objective_value =
          objective_value(cfg, voltage, objective, spec.grasp_angle_deg);
    } catch (const Error& e) {
      row.status = to_string(e.code());
    }
    return row;
  };

  std::vector<SweepRow> rows(spec.values.size());
  if (parallel && spec.values.size() > 1) {
    std::vector<std::future<SweepRow>> futures;
    futures.reserve(spec.values.size());
    for (double value : spec.values)
      futures.push_back(
          std::async(std::launch::async, evaluate_row, value));
    for (std::size_t i = 0; i < futures.size(); ++i) rows[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < spec.values.size(); ++i)
      rows[i] = evaluate_row(spec.values[i]);
  }
  return rows;
}

std::string sweep_table_csv(const std::vector<SweepRow>& rows) {
  std::string out = "param,objective,free_deflection_deg,peak_force_N,status\n";
  char buf[160];
  for (const SweepRow& row : rows) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g,%s\n",
                  row.parameter_value, row.objective_value,
                  row.free_deflection_deg, row.peak_force_n, row.status.c_str());
    out += buf;
  }
  return out;
}

namespace {

struct Axis {
  int index;  // 0 width, 1 length, 2 voltage
  double lo;
  double hi;
};

double& axis_value(DesignPoint& p, int index) {
  switch (index) {
    case 0: return p.pouch_free_width;
    case 1: return p.electrode_length;
    default: return p.voltage;
  }
}

}  // namespace

OptimizeResult optimize(const DesignBounds& bounds,
                        const std::function<double(const DesignPoint&)>& objective,
                        int budget) {
  const ParameterRange ranges[3] = {bounds.pouch_free_width,
                                    bounds.electrode_length, bounds.voltage};
  for (const ParameterRange& r : ranges)
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi)
      fail(ErrorCode::infeasible_bounds, "bounds must satisfy lo <= hi");
  if (budget < 1)
    fail(ErrorCode::infeasible_bounds, "optimization budget must be >= 1");

  std::vector<Axis> live;
  for (int i = 0; i < 3; ++i)
    if (ranges[i].hi > ranges[i].lo) live.push_back({i, ranges[i].lo, ranges[i].hi});

  OptimizeResult result;
  result.best_value = -std::numeric_limits<double>::infinity();
  DesignPoint current{ranges[0].lo, ranges[1].lo, ranges[2].lo};

  int evals_left = budget;
  auto evaluate = [&](const DesignPoint& p) -> double {
    --evals_left;
    Evaluation ev{p, -std::numeric_limits<double>::infinity(), false};
    try {
      ev.value = objective(p);
      if (!std::isfinite(ev.value)) ev.failed = true;
    } catch (const Error&) {
      ev.failed = true;
    }
    result.trace.push_back(ev);
    if (!ev.failed && ev.value > result.best_value) {
      result.best_value = ev.value;
      result.best = p;
    }
    return ev.failed ? -std::numeric_limits<double>::infinity() : ev.value;
  };

  if (live.empty()) {
    evaluate(current);
  } else {
    // Coarse grid over the live axes, endpoints included.
    const int per_axis = std::clamp(
        static_cast<int>(std::floor(std::pow(static_cast<double>(budget) / 2.0,
                                             1.0 / live.size()))),
        2, 5);
    std::vector<int> idx(live.size(), 0);
    while (evals_left > 0) {
      DesignPoint p = current;
      for (std::size_t d = 0; d < live.size(); ++d)
        axis_value(p, live[d].index) =
            live[d].lo +
            (live[d].hi - live[d].lo) * idx[d] / static_cast<double>(per_axis - 1);
      evaluate(p);
      std::size_t d = 0;
      while (d < live.size() && ++idx[d] == per_axis) idx[d++] = 0;
      if (d == live.size()) break;
    }
    // Coordinate-wise golden-section refinement around the running best.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    bool improved = true;
    for (int pass = 0; pass < 10 && improved && evals_left > 0; ++pass) {
      improved = false;
      for (const Axis& axis : live) {
        const double tol = 0.01 * (axis.hi - axis.lo);
        double a = axis.lo, b = axis.hi;
        DesignPoint base = result.trace.empty() ? current : result.best;
        double c = b - invphi * (b - a);
        double d = a + invphi * (b - a);
        auto at = [&](double x) {
          DesignPoint p = base;
          axis_value(p, axis.index) = x;
          return evaluate(p);
        };
        const double before = result.best_value;
        if (evals_left < 2) break;
        double fc = at(c);
        double fd = at(d);
        while (b - a > tol && evals_left > 0) {
          if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = at(d);
          } else {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = at(c);
          }
        }
        if (result.best_value > before) improved = true;
        if (evals_left <= 0) break;
      }
    }
  }

  const bool all_failed = std::all_of(result.trace.begin(), result.trace.end(),
                                      [](const Evaluation& e) { return e.failed; });
  if (result.trace.empty() || all_failed)
    fail(ErrorCode::all_evaluations_failed,
         "every objective evaluation failed inside the bounds",
         ErrorClass::computation);
  return result;
}

OptimizeResult optimize(const DesignBounds& bounds, const FingerConfig& base,
                        const Objective& objective, int budget,
                        bool use_width_calibration, double grasp_angle_deg) {
  objective.validate();
  base.validate();
  auto fn = [&](const DesignPoint& point) {
    FingerConfig cfg = apply_parameter(base, SweepParameter::pouch_free_width,
                                       point.pouch_free_width,
                                       use_width_calibration);
    cfg = apply_parameter(cfg, SweepParameter::electrode_length,
                          point.electrode_length, use_width_calibration);
    return objective_value(cfg, point.voltage, objective, grasp_angle_deg);
  };
  return optimize(bounds, fn, budget);
}

void GraspCase::validate() const {
  if (!std::isfinite(object_mass) || object_mass < 0.0)
    fail(ErrorCode::invariant_violation, "object mass must be non-negative");
  if (n_toes < 1)
    fail(ErrorCode::invariant_violation, "grasp needs at least one toe");
  if (!std::isfinite(normal_force_per_toe) || normal_force_per_toe <= 0.0)
    fail(ErrorCode::invariant_violation, "normal force per toe must be positive");
  if (!std::isfinite(friction_mu) || friction_mu <= 0.0)
    fail(ErrorCode::invariant_violation, "friction coefficient must be positive");
  if (!std::isfinite(gravity) || gravity <= 0.0)
    fail(ErrorCode::invariant_violation, "gravity must be positive");
}

GraspReport grasp_feasibility(const GraspCase& grasp_case) {
  grasp_case.validate();
  const double grip = grasp_case.n_toes * grasp_case.normal_force_per_toe;
  GraspReport report;
  report.required_mu = grasp_case.object_mass * grasp_case.gravity / grip;
  report.max_payload_kg = grip * grasp_case.friction_mu / grasp_case.gravity;
  report.holds = grip * grasp_case.friction_mu >=
                 grasp_case.object_mass * grasp_case.gravity;
  return report;
}

}  // namespace hasel
