#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hasel/error.hpp"

namespace hasel::mission {

inline constexpr std::uint8_t frame_sync_byte = 0xA5;

enum class GripperCommand : std::uint8_t { open = 0x01, close = 0x02 };

const char* to_string(GripperCommand command);

/// 4-byte serial frame: sync 0xA5, command byte, duty byte (PWM duty
/// proxy, 0-255), XOR checksum of the previous three bytes.
struct CommandFrame {
  std::array<std::uint8_t, 4> bytes{};
};

struct DecodedCommand {
  GripperCommand command;
  std::uint8_t duty;
};

CommandFrame encode_frame(GripperCommand command, std::uint8_t duty);
DecodedCommand decode_frame(const CommandFrame& frame);

enum class Supply { lab_supply, untethered_hvps };

const char* to_string(Supply supply);
Supply supply_from_name(const std::string& name);

/// First-order closure dynamics. `closure_time_95` is the time to reach
/// 95% of the commanded level; the untethered supply stretches it by the
/// slowdown factor.
struct ActuationDynamics {
  double closure_time_95 = 0.15;  // s
  Supply supply = Supply::lab_supply;
  double untethered_slowdown = 1.5;

  void validate() const;
  double effective_time_95() const;
};

struct TimedCommand {
  double time;  // s, when the ground station sends the frame
  CommandFrame frame;
};

struct CommandTimeline {
  std::vector<TimedCommand> commands;  // timestamps non-decreasing
  double link_latency = 0.0;           // s
  double jitter_bound = 0.0;           // s, uniform, seeded

  void validate() const;
};

/// Parabolic swoop past an object sitting at (object_position, 0):
/// z = min_altitude + path_curvature * (x - object_position)^2, flown at
/// constant approach speed from object_position - start_offset to
/// object_position + start_offset.
struct SwoopTrajectory {
  double approach_speed = 1.0;   // m/s
  double min_altitude = 0.05;    // m, closest vertical gap to the object
  double object_position = 2.0;  // m
  double grasp_radius = 0.12;    // m, gripper envelope tolerance
  double start_offset = 2.0;     // m
  double path_curvature = 0.08;  // 1/m

  void validate() const;
};

enum class GraspOutcome { grasped, missed_early, missed_late };

const char* to_string(GraspOutcome outcome);

struct TraceRow {
  double t_s;
  double x_m;
  double z_m;
  double dist_m;
  GripperCommand active_command;
  double closure_frac;
};

struct SimResult {
  GraspOutcome outcome;
  std::vector<TraceRow> trace;
  // Time span during which the object was inside the grasp radius; NaN
  // when the path never enters it.
  double window_begin;
  double window_end;
};

/// Fixed-step simulation of the pass. Commands arrive after link latency
/// plus seeded uniform jitter; the closure fraction then relaxes toward
/// the commanded duty level first-order. Grasped means closure >= 0.9
/// while the object is inside the grasp radius.
SimResult simulate(const SwoopTrajectory& traj, const CommandTimeline& timeline,
                   const ActuationDynamics& dyn, double dt,
                   std::uint64_t seed = 0);

/// CSV with header `t_s,x_m,z_m,dist_m,cmd,closure_frac`.
std::string trace_csv(const SimResult& result);

/// A scenario with a single close command whose send time is the free
/// variable, for window scans and boundary searches.
struct CloseCommandScenario {
  SwoopTrajectory traj;
  ActuationDynamics dyn;
  double link_latency = 0.0;
  double jitter_bound = 0.0;
  std::uint8_t duty = 255;
  double dt = 0.005;
  std::uint64_t seed = 0;
};

GraspOutcome outcome_for_close_time(const CloseCommandScenario& scenario,
                                    double command_time);

struct CommandWindow {
  bool any = false;
  bool contiguous = true;
  double earliest = 0.0;
  double latest = 0.0;
};

/// Scans close-command times on [t_lo, t_hi] at the given step and
/// reports the grasp-success window.
CommandWindow scan_close_times(const CloseCommandScenario& scenario,
                               double t_lo, double t_hi, double step);

/// Latest close-command time that still grasps, refined by bisection to
/// `tol`. Empty when no scanned time grasps.
std::optional<double> latest_close_time(const CloseCommandScenario& scenario,
                                        double t_lo, double t_hi, double tol);

}  // namespace hasel::mission
