#include "hasel/mission.hpp"

#include <cmath>

#include "doctest.h"

using namespace hasel;
using namespace hasel::mission;

namespace {

CloseCommandScenario base_scenario() {
  CloseCommandScenario scenario;
  scenario.traj.approach_speed = 1.0;
  scenario.traj.min_altitude = 0.05;
  scenario.traj.object_position = 2.0;
  scenario.traj.grasp_radius = 0.12;
  scenario.traj.start_offset = 2.0;
  scenario.traj.path_curvature = 0.08;
  scenario.dyn.closure_time_95 = 0.15;
  scenario.dyn.supply = Supply::lab_supply;
  scenario.dyn.untethered_slowdown = 1.5;
  scenario.link_latency = 0.02;
  scenario.jitter_bound = 0.0;
  scenario.dt = 0.005;
  return scenario;
}

CommandTimeline single_close(double t, double latency = 0.0) {
  CommandTimeline timeline;
  timeline.link_latency = latency;
  timeline.commands = {{t, encode_frame(GripperCommand::close, 255)}};
  return timeline;
}

}  // namespace

TEST_CASE("frame bytes for an open command at zero duty") {
  const CommandFrame frame = encode_frame(GripperCommand::open, 0);
  CHECK(frame.bytes[0] == 0xA5);
  CHECK(frame.bytes[1] == 0x01);
  CHECK(frame.bytes[2] == 0x00);
  CHECK(frame.bytes[3] == 0xA4);
}

TEST_CASE("frame round-trip over all 512 command/duty pairs") {
  for (const GripperCommand command :
       {GripperCommand::open, GripperCommand::close}) {
    for (int duty = 0; duty <= 255; ++duty) {
      const CommandFrame frame =
          encode_frame(command, static_cast<std::uint8_t>(duty));
      const DecodedCommand decoded = decode_frame(frame);
      CHECK(decoded.command == command);
      CHECK(decoded.duty == duty);
    }
  }
}

TEST_CASE("malformed frames are rejected with distinct codes") {
  CommandFrame frame = encode_frame(GripperCommand::close, 200);
  frame.bytes[3] ^= 0x01;
  CHECK_THROWS_AS(decode_frame(frame), Error);
  try {
    decode_frame(frame);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::bad_checksum);
  }

  frame = encode_frame(GripperCommand::close, 200);
  frame.bytes[0] = 0x5A;
  try {
    decode_frame(frame);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::bad_sync_byte);
  }

  frame.bytes[0] = 0xA5;
  frame.bytes[1] = 0x07;
  frame.bytes[3] = static_cast<std::uint8_t>(0xA5 ^ 0x07 ^ 200);
  try {
    decode_frame(frame);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_command);
  }
}

TEST_CASE("early close with fast dynamics grasps") {
  const CloseCommandScenario scenario = base_scenario();
  CHECK(outcome_for_close_time(scenario, 0.1) == GraspOutcome::grasped);
}

TEST_CASE("close command after the pass misses late") {
  const CloseCommandScenario scenario = base_scenario();
  CHECK(outcome_for_close_time(scenario, 3.5) == GraspOutcome::missed_late);
}

TEST_CASE("close-then-reopen before the pass misses early") {
  const CloseCommandScenario scenario = base_scenario();
  CommandTimeline timeline;
  timeline.commands = {{0.1, encode_frame(GripperCommand::close, 255)},
                       {1.0, encode_frame(GripperCommand::open, 0)}};
  const SimResult result =
      simulate(scenario.traj, timeline, scenario.dyn, scenario.dt);
  CHECK(result.outcome == GraspOutcome::missed_early);
}

TEST_CASE("low duty never closes far enough to grasp") {
  CloseCommandScenario scenario = base_scenario();
  scenario.duty = 100;  // commanded closure 0.39, below the 0.9 threshold
  CHECK(outcome_for_close_time(scenario, 0.1) == GraspOutcome::missed_late);
}

TEST_CASE("grasp window over command times is contiguous") {
  const CloseCommandScenario scenario = base_scenario();
  const CommandWindow window =
      scan_close_times(scenario, 0.0, 4.0, scenario.dt);
  CHECK(window.any);
  CHECK(window.contiguous);
  CHECK(window.earliest == 0.0);  // closing early keeps the grip through the pass
  CHECK(window.latest > 1.0);
  CHECK(window.latest < 2.2);
}

TEST_CASE("untethered supply forces a strictly earlier command boundary") {
  CloseCommandScenario lab = base_scenario();
  CloseCommandScenario untethered = base_scenario();
  untethered.dyn.supply = Supply::untethered_hvps;

  const auto lab_latest = latest_close_time(lab, 0.0, 4.0, 1e-4);
  const auto unt_latest = latest_close_time(untethered, 0.0, 4.0, 1e-4);
  REQUIRE(lab_latest.has_value());
  REQUIRE(unt_latest.has_value());
  CHECK(*unt_latest < *lab_latest);
  CHECK(*lab_latest - *unt_latest > 0.01);
}

TEST_CASE("traces are byte-identical for a fixed seed") {
  const CloseCommandScenario scenario = base_scenario();
  CommandTimeline timeline = single_close(1.2, 0.02);
  timeline.jitter_bound = 0.004;
  const SimResult a = simulate(scenario.traj, timeline, scenario.dyn, 0.005, 99);
  const SimResult b = simulate(scenario.traj, timeline, scenario.dyn, 0.005, 99);
  CHECK(trace_csv(a) == trace_csv(b));
}

TEST_CASE("halving dt moves the boundary by less than dt") {
  CloseCommandScenario coarse = base_scenario();
  coarse.dt = 0.01;
  CloseCommandScenario fine = base_scenario();
  fine.dt = 0.005;
  const auto coarse_latest = latest_close_time(coarse, 0.0, 4.0, 1e-4);
  const auto fine_latest = latest_close_time(fine, 0.0, 4.0, 1e-4);
  REQUIRE(coarse_latest.has_value());
  REQUIRE(fine_latest.has_value());
  CHECK(std::abs(*coarse_latest - *fine_latest) < coarse.dt);
}

TEST_CASE("trace rows carry the pinned CSV schema") {
  const CloseCommandScenario scenario = base_scenario();
  const SimResult result = simulate(scenario.traj, single_close(1.0),
                                    scenario.dyn, scenario.dt);
  const std::string csv = trace_csv(result);
  CHECK(csv.rfind("t_s,x_m,z_m,dist_m,cmd,closure_frac\n", 0) == 0);
  CHECK(csv.find(",close,") != std::string::npos);
  CHECK(csv.find(",open,") != std::string::npos);
}

TEST_CASE("timeline and timestep validation") {
  const CloseCommandScenario scenario = base_scenario();
  CHECK_THROWS_AS(
      simulate(scenario.traj, single_close(1.0), scenario.dyn, 0.0), Error);
  CommandTimeline bad;
  bad.commands = {{1.0, encode_frame(GripperCommand::close, 255)},
                  {0.5, encode_frame(GripperCommand::open, 0)}};
  CHECK_THROWS_AS(simulate(scenario.traj, bad, scenario.dyn, 0.01), Error);
  CommandTimeline corrupted = single_close(1.0);
  corrupted.commands[0].frame.bytes[3] ^= 0xFF;
  CHECK_THROWS_AS(simulate(scenario.traj, corrupted, scenario.dyn, 0.01), Error);
  ActuationDynamics dyn;
  dyn.untethered_slowdown = 0.5;
  CHECK_THROWS_AS(dyn.validate(), Error);
}
