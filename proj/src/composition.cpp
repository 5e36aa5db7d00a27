#include "hasel/composition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace hasel {

void ScorpionUnit::validate() const {
  if (pouch_free_lengths.empty())
    fail(ErrorCode::invariant_violation, "scorpion unit needs at least one pouch");
  if (!std::isfinite(base_electrode_height) || base_electrode_height <= 0.0)
    fail(ErrorCode::invariant_violation, "base electrode height must be positive");
  if (!std::isfinite(channel_width) || channel_width <= 0.0)
    fail(ErrorCode::invariant_violation, "channel width must be positive");
  if (pouch_max_deflection_deg.empty())
    fail(ErrorCode::invariant_violation,
         "scorpion unit needs a per-pouch max deflection (single value broadcasts)");
  if (pouch_max_deflection_deg.size() != 1 &&
      pouch_max_deflection_deg.size() != pouch_free_lengths.size())
    fail(ErrorCode::invariant_violation,
         "pouch_max_deflection_deg must have one entry or one per pouch");
  for (const HingeUnit& pouch : scorpion_pouch_hinges(*this)) pouch.validate();
}

bool ValidationReport::ok() const {
  return std::none_of(entries.begin(), entries.end(), [](const ValidationIssue& e) {
    return e.severity == ValidationIssue::Severity::error;
  });
}

bool ValidationReport::clean() const {
  return std::all_of(entries.begin(), entries.end(), [](const ValidationIssue& e) {
    return e.severity == ValidationIssue::Severity::pass;
  });
}

ValidationReport validate_channel(const ScorpionUnit& unit) {
  ValidationReport report;
  char buf[160];
  const double mm = unit.channel_width * 1e3;
  if (unit.channel_width < scorpion_min_channel_width) {
    std::snprintf(buf, sizeof buf,
                  "channel width %.3g mm is below 4 mm; the dielectric cannot "
                  "reliably traverse the channel",
                  mm);
    report.entries.push_back({ValidationIssue::Severity::error, buf});
  } else if (unit.channel_width < scorpion_recommended_channel_width) {
    std::snprintf(buf, sizeof buf,
                  "channel width %.3g mm is below the recommended 5 mm", mm);
    report.entries.push_back({ValidationIssue::Severity::warning, buf});
  } else {
    std::snprintf(buf, sizeof buf, "channel width %.3g mm passes", mm);
    report.entries.push_back({ValidationIssue::Severity::pass, buf});
  }
  return report;
}

std::vector<HingeUnit> scorpion_pouch_hinges(const ScorpionUnit& unit) {
  const std::size_t n = unit.pouch_free_lengths.size();
  std::vector<HingeUnit> hinges;
  hinges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    HingeUnit hinge;
    hinge.geom.electrode_length = unit.base_electrode_height / static_cast<double>(n);
    hinge.geom.pouch_free_length = unit.pouch_free_lengths[i];
    hinge.geom.actuator_width = unit.actuator_width;
    hinge.geom.film_thickness = unit.film_thickness;
    hinge.dielectric = unit.dielectric;
    hinge.max_deflection_deg = unit.pouch_max_deflection_deg.size() == 1
                                   ? unit.pouch_max_deflection_deg.front()
                                   : unit.pouch_max_deflection_deg[i];
    hinge.electrode_material_gain = unit.electrode_material_gain;
    hinge.min_zip_angle = unit.min_zip_angle;
    hinges.push_back(hinge);
  }
  return hinges;
}

void FingerConfig::validate() const {
  if (units.empty())
    fail(ErrorCode::invariant_violation, "finger needs at least one unit");
  if (link_lengths.size() != units.size())
    fail(ErrorCode::invariant_violation,
         "finger needs one link length per unit (last one runs to the tip)");
  for (double len : link_lengths)
    if (!std::isfinite(len) || len <= 0.0)
      fail(ErrorCode::invariant_violation, "link lengths must be positive");
  for (const FingerElement& element : units)
    std::visit([](const auto& unit) { unit.validate(); }, element);
}

namespace {

struct FlatJoint {
  HingeUnit hinge;
  double tip_radius;
};

// Expands every unit to per-pouch hinges, each annotated with the distance
// from its joint to the fingertip. A scorpion's pouches fold at the same
// joint location and share one radius.
std::vector<FlatJoint> flatten(const FingerConfig& cfg) {
  cfg.validate();
  std::vector<double> tip_radius(cfg.units.size());
  double acc = 0.0;
  for (std::size_t i = cfg.units.size(); i-- > 0;) {
    acc += cfg.link_lengths[i];
    tip_radius[i] = acc;
  }
  std::vector<FlatJoint> joints;
  for (std::size_t i = 0; i < cfg.units.size(); ++i) {
    if (const HingeUnit* hinge = std::get_if<HingeUnit>(&cfg.units[i])) {
      joints.push_back({*hinge, tip_radius[i]});
    } else {
      for (HingeUnit& pouch :
           scorpion_pouch_hinges(std::get<ScorpionUnit>(cfg.units[i])))
        joints.push_back({std::move(pouch), tip_radius[i]});
    }
  }
  return joints;
}

}  // namespace

double element_free_deflection(const FingerElement& element, double voltage) {
  if (const HingeUnit* hinge = std::get_if<HingeUnit>(&element))
    return free_deflection(*hinge, voltage);
  double total = 0.0;
  for (const HingeUnit& pouch :
       scorpion_pouch_hinges(std::get<ScorpionUnit>(element)))
    total += free_deflection(pouch, voltage);
  return total;
}

double chain_free_deflection(const FingerConfig& cfg, double voltage) {
  cfg.validate();
  double total = 0.0;
  for (const FingerElement& element : cfg.units)
    total += element_free_deflection(element, voltage);
  return total;
}

double chain_tip_force(const FingerConfig& cfg, double voltage,
                       double theta_total_deg) {
  const std::vector<FlatJoint> joints = flatten(cfg);
  std::vector<double> weights(joints.size());
  double total_weight = 0.0;
  for (std::size_t i = 0; i < joints.size(); ++i) {
    weights[i] = free_deflection(joints[i].hinge, voltage);
    total_weight += weights[i];
  }
  if (total_weight <= 0.0)
    fail(ErrorCode::domain_violation,
         "chain has zero free deflection; tip force is undefined");
  if (!std::isfinite(theta_total_deg) || theta_total_deg < 0.0 ||
      theta_total_deg > total_weight * (1.0 + 1e-12))
    fail(ErrorCode::domain_violation,
         "total deflection must lie in [0, chain free deflection]");
  double force = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < joints.size(); ++i) {
    const double theta_i =
        std::min(theta_total_deg * weights[i] / total_weight,
                 joints[i].hinge.max_deflection_deg);
    force = std::min(force, hinge_torque(joints[i].hinge, voltage, theta_i) /
                                joints[i].tip_radius);
  }
  return force;
}

TorqueAngleCurve chain_tip_force_curve(const FingerConfig& cfg, double voltage,
                                       int n_samples) {
  if (n_samples < 3)
    fail(ErrorCode::domain_violation, "curve needs at least 3 samples");
  const double span = chain_free_deflection(cfg, voltage);
  TorqueAngleCurve curve;
  curve.kind = CurveKind::analytic_sampled;
  curve.mode = ForceMode::tip_force;
  curve.samples.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double theta =
        i == n_samples - 1 ? span
                           : span * static_cast<double>(i) / (n_samples - 1);
    curve.samples.push_back({theta, chain_tip_force(cfg, voltage, theta)});
  }
  return curve;
}

namespace {

double interp_diff(const TorqueAngleCurve& a, const TorqueAngleCurve& b,
                   double theta) {
  return a.value_at(theta) - b.value_at(theta);
}

}  // namespace

CrossoverResult crossover(const TorqueAngleCurve& a, const TorqueAngleCurve& b) {
  a.validate();
  b.validate();
  if (a.mode != b.mode)
    fail(ErrorCode::force_mode_mismatch,
         "cannot intersect curves of different force modes");
  const double lo = std::max(a.theta_min(), b.theta_min());
  const double hi = std::min(a.theta_max(), b.theta_max());
  if (lo >= hi)
    fail(ErrorCode::disjoint_domains, "curve domains do not overlap");

  std::vector<double> grid{lo, hi};
  for (const auto& curve : {a, b})
    for (const CurvePoint& p : curve.samples)
      if (p.theta_deg > lo && p.theta_deg < hi) grid.push_back(p.theta_deg);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double x, double y) { return std::abs(x - y) < 1e-12; }),
             grid.end());

  std::vector<double> diff(grid.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    diff[i] = interp_diff(a, b, grid[i]);
    scale = std::max({scale, std::abs(a.value_at(grid[i])),
                      std::abs(b.value_at(grid[i]))});
  }

  CrossoverResult result;
  const double zero_tol = 1e-12 * std::max(1.0, scale);
  if (std::all_of(diff.begin(), diff.end(),
                  [&](double d) { return std::abs(d) <= zero_tol; })) {
    result.degenerate = true;
    return result;
  }

  auto push_root = [&](double theta) {
    if (!result.points.empty() &&
        std::abs(result.points.back().theta_deg - theta) < 5e-3)
      return;
    result.points.push_back({theta, a.value_at(theta)});
  };

  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (std::abs(diff[i]) <= zero_tol) {
      push_root(grid[i]);
      continue;
    }
    if (diff[i] * diff[i + 1] < 0.0) {
      double left = grid[i];
      double right = grid[i + 1];
      double fleft = diff[i];
      while (right - left > 1e-4) {
        const double mid = 0.5 * (left + right);
        const double fmid = interp_diff(a, b, mid);
        if (fmid == 0.0) {
          left = right = mid;
          break;
        }
        if ((fleft < 0.0) == (fmid < 0.0)) {
          left = mid;
          fleft = fmid;
        } else {
          right = mid;
        }
      }
      push_root(0.5 * (left + right));
    }
  }
  if (std::abs(diff.back()) <= zero_tol) push_root(grid.back());
  return result;
}

}  // namespace hasel
