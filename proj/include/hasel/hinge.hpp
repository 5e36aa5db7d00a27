#pragma once

#include "hasel/actuator.hpp"
#include "hasel/curve.hpp"

namespace hasel {

/// One pouch mounted across a flexible hinge so that contraction rotates
/// the joint. Produces torque-versus-deflection behavior.
///
/// `lever_arm` of 0 means "use the default", half the total pouch
/// dimension. `prestress_torque` is signed: 0 for a plain gripper, a
/// negative bias for the prestressed (closed-by-default) variant.
struct HingeUnit {
  PouchGeometry geom;
  DielectricSpec dielectric;
  double lever_arm = 0.0;
  double max_deflection_deg = 45.0;
  double prestress_torque = 0.0;
  double electrode_material_gain = 1.0;
  double min_zip_angle = default_min_zip_angle;

  void validate() const;

  /// Resolved lever arm [m].
  double lever() const;
};

double default_lever_arm(const PouchGeometry& geom);

/// Joint deflection [deg] produced by a given zip angle under the
/// symmetric-wrap assumption: the fold angle 2*a scaled by the free
/// fraction of the pouch, normalized so that a = pi/2 maps to
/// max_deflection_deg. Accepts a in [0, pi/2].
double theta_from_alpha(const HingeUnit& unit, double zip_angle);

/// Drive schedule used by the torque model: the zip angle advances
/// affinely from `min_zip_angle` at zero deflection to pi/2 at full
/// deflection, which keeps the force law finite at the start and zero at
/// the end of travel.
double zip_angle_at(const HingeUnit& unit, double theta_deg);

/// Joint torque [N*m] at the given deflection:
/// gain * pouch force * lever + prestress.
double hinge_torque(const HingeUnit& unit, double voltage, double theta_deg);

/// Torque curve sampled uniformly on [0, max_deflection_deg].
TorqueAngleCurve hinge_torque_curve(const HingeUnit& unit, double voltage,
                                    int n_samples);

/// Zero-load deflection [deg]: the largest angle at which the joint still
/// produces non-negative torque. Equals max_deflection_deg when the torque
/// never goes negative; otherwise found by bisection.
double free_deflection(const HingeUnit& unit, double voltage);

/// Normal force [N] available at the lever radius while closing on an
/// object. For a prestressed unit the bias acts with the grip, so its
/// magnitude is added to the actuator contribution.
double grip_force(const HingeUnit& unit, double voltage, double theta_deg);

}  // namespace hasel
