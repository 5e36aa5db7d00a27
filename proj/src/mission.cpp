#include "hasel/mission.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace hasel::mission {

const char* to_string(GripperCommand command) {
  switch (command) {
    case GripperCommand::open: return "open";
    case GripperCommand::close: return "close";
  }
  return "?";
}

const char* to_string(Supply supply) {
  switch (supply) {
    case Supply::lab_supply: return "lab-supply";
    case Supply::untethered_hvps: return "untethered-hvps";
  }
  return "?";
}

Supply supply_from_name(const std::string& name) {
  if (name == "lab-supply") return Supply::lab_supply;
  if (name == "untethered-hvps") return Supply::untethered_hvps;
  fail(ErrorCode::unknown_key, "unknown supply '" + name + "'");
}

const char* to_string(GraspOutcome outcome) {
  switch (outcome) {
    case GraspOutcome::grasped: return "grasped";
    case GraspOutcome::missed_early: return "missed-early";
    case GraspOutcome::missed_late: return "missed-late";
  }
  return "?";
}

CommandFrame encode_frame(GripperCommand command, std::uint8_t duty) {
  const auto cmd = static_cast<std::uint8_t>(command);
  CommandFrame frame;
  frame.bytes = {frame_sync_byte, cmd, duty,
                 static_cast<std::uint8_t>(frame_sync_byte ^ cmd ^ duty)};
  return frame;
}

DecodedCommand decode_frame(const CommandFrame& frame) {
  if (frame.bytes[0] != frame_sync_byte)
    fail(ErrorCode::bad_sync_byte, "frame does not start with 0xA5");
  const std::uint8_t expected =
      static_cast<std::uint8_t>(frame.bytes[0] ^ frame.bytes[1] ^ frame.bytes[2]);
  if (frame.bytes[3] != expected)
    fail(ErrorCode::bad_checksum, "frame checksum mismatch");
  if (frame.bytes[1] != static_cast<std::uint8_t>(GripperCommand::open) &&
      frame.bytes[1] != static_cast<std::uint8_t>(GripperCommand::close))
    fail(ErrorCode::unknown_command, "unknown command byte");
  return {static_cast<GripperCommand>(frame.bytes[1]), frame.bytes[2]};
}

void ActuationDynamics::validate() const {
  if (!std::isfinite(closure_time_95) || closure_time_95 <= 0.0)
    fail(ErrorCode::invariant_violation, "closure time constant must be positive");
  if (!std::isfinite(untethered_slowdown) || untethered_slowdown < 1.0)
    fail(ErrorCode::invariant_violation, "untethered slowdown factor must be >= 1");
}

double ActuationDynamics::effective_time_95() const {
  return supply == Supply::untethered_hvps ? closure_time_95 * untethered_slowdown
                                           : closure_time_95;
}

void CommandTimeline::validate() const {
  if (!std::isfinite(link_latency) || link_latency < 0.0)
    fail(ErrorCode::invariant_violation, "link latency must be non-negative");
  if (!std::isfinite(jitter_bound) || jitter_bound < 0.0)
    fail(ErrorCode::invariant_violation, "jitter bound must be non-negative");
  double prev = -std::numeric_limits<double>::infinity();
  for (const TimedCommand& cmd : commands) {
    if (!std::isfinite(cmd.time) || cmd.time < prev)
      fail(ErrorCode::invariant_violation,
           "command timestamps must be non-decreasing");
    prev = cmd.time;
    decode_frame(cmd.frame);  // malformed frames are rejected up front
  }
}

void SwoopTrajectory::validate() const {
  if (!std::isfinite(approach_speed) || approach_speed <= 0.0)
    fail(ErrorCode::invariant_violation, "approach speed must be positive");
  if (!std::isfinite(min_altitude) || min_altitude < 0.0)
    fail(ErrorCode::invariant_violation, "minimum altitude must be non-negative");
  if (!std::isfinite(grasp_radius) || grasp_radius <= 0.0)
    fail(ErrorCode::invariant_violation, "grasp radius must be positive");
  if (!std::isfinite(start_offset) || start_offset <= 0.0)
    fail(ErrorCode::invariant_violation, "start offset must be positive");
  if (!std::isfinite(path_curvature) || path_curvature < 0.0)
    fail(ErrorCode::invariant_violation, "path curvature must be non-negative");
}

namespace {

// Deterministic uniform in [0, 1): 53 random bits, independent of any
// library distribution implementation.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Arrival {
  double time;
  double target;  // commanded closure level
};

}  // namespace

SimResult simulate(const SwoopTrajectory& traj, const CommandTimeline& timeline,
                   const ActuationDynamics& dyn, double dt, std::uint64_t seed) {
  traj.validate();
  timeline.validate();
  dyn.validate();
  if (!std::isfinite(dt) || dt <= 0.0)
    fail(ErrorCode::invalid_timestep, "dt must be positive and finite");

  std::mt19937_64 rng(seed);
  std::vector<Arrival> arrivals;
  arrivals.reserve(timeline.commands.size());
  for (const TimedCommand& cmd : timeline.commands) {
    const DecodedCommand decoded = decode_frame(cmd.frame);
    const double jitter = timeline.jitter_bound * uniform01(rng);
    const double target = decoded.command == GripperCommand::close
                              ? decoded.duty / 255.0
                              : 0.0;
    arrivals.push_back({cmd.time + timeline.link_latency + jitter, target});
  }
  std::stable_sort(arrivals.begin(), arrivals.end(),
                   [](const Arrival& a, const Arrival& b) { return a.time < b.time; });

  const double tau = dyn.effective_time_95() / std::log(20.0);
  const double step_gain = 1.0 - std::exp(-dt / tau);
  const double horizon = 2.0 * traj.start_offset / traj.approach_speed;
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt)) + 1;

  SimResult result;
  result.window_begin = std::numeric_limits<double>::quiet_NaN();
  result.window_end = std::numeric_limits<double>::quiet_NaN();
  result.trace.reserve(steps);

  double closure = 0.0;
  double target = 0.0;
  GripperCommand active = GripperCommand::open;
  std::size_t next_arrival = 0;
  bool grasped = false;
  bool closed_before_window = false;
  bool window_seen = false;

  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    while (next_arrival < arrivals.size() && arrivals[next_arrival].time <= t) {
      target = arrivals[next_arrival].target;
      active = target > 0.0 ? GripperCommand::close : GripperCommand::open;
      ++next_arrival;
    }
    const double x = traj.object_position - traj.start_offset +
                     traj.approach_speed * t;
    const double dx = x - traj.object_position;
    const double z = traj.min_altitude + traj.path_curvature * dx * dx;
    const double dist = std::hypot(dx, z);

    result.trace.push_back({t, x, z, dist, active, closure});

    const bool in_window = dist <= traj.grasp_radius;
    if (in_window) {
      if (!window_seen) result.window_begin = t;
      result.window_end = t;
      window_seen = true;
      if (closure >= 0.9) grasped = true;
    } else if (!window_seen && closure >= 0.9) {
      closed_before_window = true;
    }

    closure += (target - closure) * step_gain;
  }

  if (grasped)
    result.outcome = GraspOutcome::grasped;
  else if (closed_before_window && window_seen)
    result.outcome = GraspOutcome::missed_early;
  else
    result.outcome = GraspOutcome::missed_late;
  return result;
}

std::string trace_csv(const SimResult& result) {
  std::string out = "t_s,x_m,z_m,dist_m,cmd,closure_frac\n";
  char buf[160];
  for (const TraceRow& row : result.trace) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f,%s,%.6f\n", row.t_s,
                  row.x_m, row.z_m, row.dist_m, to_string(row.active_command),
                  row.closure_frac);
    out += buf;
  }
  return out;
}

GraspOutcome outcome_for_close_time(const CloseCommandScenario& scenario,
                                    double command_time) {
  CommandTimeline timeline;
  timeline.link_latency = scenario.link_latency;
  timeline.jitter_bound = scenario.jitter_bound;
  timeline.commands = {
      {command_time, encode_frame(GripperCommand::close, scenario.duty)}};
  return simulate(scenario.traj, timeline, scenario.dyn, scenario.dt,
                  scenario.seed)
      .outcome;
}

CommandWindow scan_close_times(const CloseCommandScenario& scenario, double t_lo,
                               double t_hi, double step) {
  if (!(step > 0.0) || !(t_hi >= t_lo))
    fail(ErrorCode::domain_violation, "scan needs t_lo <= t_hi and step > 0");
  CommandWindow window;
  bool in_run = false;
  bool run_done = false;
  for (double t = t_lo; t <= t_hi + 1e-12; t += step) {
    const bool ok = outcome_for_close_time(scenario, t) == GraspOutcome::grasped;
    if (ok) {
      if (run_done) window.contiguous = false;
      if (!window.any) window.earliest = t;
      window.latest = t;
      window.any = true;
      in_run = true;
    } else if (in_run) {
      in_run = false;
      run_done = true;
    }
  }
  return window;
}

std::optional<double> latest_close_time(const CloseCommandScenario& scenario,
                                        double t_lo, double t_hi, double tol) {
  if (!(tol > 0.0))
    fail(ErrorCode::domain_violation, "tolerance must be positive");
  // Coarse scan for the last grasped sample and the first miss after it.
  const int n_coarse = 128;
  const double step = (t_hi - t_lo) / n_coarse;
  double last_ok = std::numeric_limits<double>::quiet_NaN();
  double first_bad_after = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i <= n_coarse; ++i) {
    const double t = t_lo + step * i;
    if (outcome_for_close_time(scenario, t) == GraspOutcome::grasped)
      last_ok = t;
    else if (!std::isnan(last_ok) && std::isnan(first_bad_after))
      first_bad_after = t;
  }
  if (std::isnan(last_ok)) return std::nullopt;
  if (std::isnan(first_bad_after)) return last_ok;  // window extends past t_hi
  double lo = last_ok;
  double hi = first_bad_after;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (outcome_for_close_time(scenario, mid) == GraspOutcome::grasped ? lo : hi) =
        mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace hasel::mission
