#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hasel/hinge.hpp"

namespace hasel {

// m
inline constexpr double scorpion_min_channel_width = 4e-3;
inline constexpr double scorpion_recommended_channel_width = 5e-3;

/// Multi-pouch unit driven by one shared base electrode, the pouches
/// stacked adjacently and fed through a fluid channel. The displaced
/// volume set by the base electrode is split equally between pouches, so
/// each pouch behaves like a hinge whose electrode share is
/// base_electrode_height / n_pouches. The channel is a validity
/// constraint, not a flow model.
struct ScorpionUnit {
  double base_electrode_height = 20e-3;
  std::vector<double> pouch_free_lengths;  // along the contraction axis
  double channel_width = 5e-3;
  double actuator_width = 40e-3;
  double film_thickness = 18e-6;
  DielectricSpec dielectric;
  // One entry per pouch, or a single entry broadcast to all.
  std::vector<double> pouch_max_deflection_deg;
  double electrode_material_gain = 1.0;
  double min_zip_angle = default_min_zip_angle;

  void validate() const;
};

struct ValidationIssue {
  enum class Severity { pass, warning, error };
  Severity severity;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> entries;

  bool ok() const;     // no errors
  bool clean() const;  // no errors and no warnings
};

/// Flags channels the dielectric cannot reliably traverse: error below
/// 4 mm, warning below 5 mm, pass otherwise.
ValidationReport validate_channel(const ScorpionUnit& unit);

/// The per-pouch hinge equivalents under the equal-volume-split model.
std::vector<HingeUnit> scorpion_pouch_hinges(const ScorpionUnit& unit);

using FingerElement = std::variant<HingeUnit, ScorpionUnit>;

/// Ordered composition of hinge and multi-pouch units, base to tip.
/// `link_lengths[i]` is the distance from joint i to the next joint, the
/// last entry running to the fingertip.
struct FingerConfig {
  std::string label;
  std::vector<FingerElement> units;
  std::vector<double> link_lengths;

  void validate() const;
};

double element_free_deflection(const FingerElement& element, double voltage);

/// Total zero-load deflection [deg] under linear stacking: the sum of the
/// per-unit free deflections (a multi-pouch unit contributes the sum over
/// its pouches).
double chain_free_deflection(const FingerConfig& cfg, double voltage);

/// Tip force [N] at a total deflection. The total splits across joints in
/// proportion to each one's free deflection, and the chain sustains the
/// force of its most-loaded joint: min over joints of torque / tip radius.
double chain_tip_force(const FingerConfig& cfg, double voltage,
                       double theta_total_deg);

/// Tip-force curve sampled uniformly on [0, chain free deflection].
TorqueAngleCurve chain_tip_force_curve(const FingerConfig& cfg, double voltage,
                                       int n_samples);

/// All intersections of two curves on their common domain: sign changes of
/// the difference of the linear interpolants, each refined by bisection.
/// Identical curves set the degenerate flag instead of returning points.
CrossoverResult crossover(const TorqueAngleCurve& a, const TorqueAngleCurve& b);

}  // namespace hasel
