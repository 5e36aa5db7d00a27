#include "hasel/composition.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "hasel/empirics.hpp"
#include "hasel/fixtures.hpp"

using namespace hasel;

namespace {

HingeUnit basic_hinge(double free_mm = 12.0, double theta_max = 30.0) {
  HingeUnit unit;
  unit.geom.electrode_length = 10e-3;
  unit.geom.pouch_free_length = free_mm * 1e-3;
  unit.geom.actuator_width = 40e-3;
  unit.geom.film_thickness = 18e-6;
  unit.dielectric = {3.2, "test"};
  unit.max_deflection_deg = theta_max;
  return unit;
}

TorqueAngleCurve line_curve(double c0, double c1, double lo, double hi,
                            int n = 51) {
  TorqueAngleCurve curve;
  curve.mode = ForceMode::tip_force;
  for (int i = 0; i < n; ++i) {
    const double theta = lo + (hi - lo) * i / (n - 1);
    curve.samples.push_back({theta, c0 + c1 * theta});
  }
  return curve;
}

}  // namespace

TEST_CASE("channel validation thresholds") {
  ScorpionUnit unit = fixtures::scorpion_unit();
  unit.channel_width = 3e-3;
  CHECK_FALSE(validate_channel(unit).ok());
  unit.channel_width = 4.5e-3;
  CHECK(validate_channel(unit).ok());
  CHECK_FALSE(validate_channel(unit).clean());
  unit.channel_width = 5e-3;
  CHECK(validate_channel(unit).clean());
}

TEST_CASE("chain free deflection is additive") {
  const HingeUnit hinge = basic_hinge();
  FingerConfig cfg{"three", {hinge, hinge, hinge}, {15e-3, 15e-3, 15e-3}};
  CHECK(chain_free_deflection(cfg, 8e3) == doctest::Approx(90.0).epsilon(1e-12));
}

TEST_CASE("single-element chain matches the hinge free deflection") {
  const HingeUnit hinge = basic_hinge();
  FingerConfig cfg{"one", {hinge}, {hinge.lever()}};
  CHECK(chain_free_deflection(cfg, 8e3) ==
        doctest::Approx(free_deflection(hinge, 8e3)).epsilon(1e-12));
}

TEST_CASE("chain free deflection is permutation invariant") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> defl(15.0, 55.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FingerElement> units;
    std::vector<double> links;
    const int n = 2 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
      units.emplace_back(basic_hinge(12.0, defl(rng)));
      links.push_back(15e-3);
    }
    FingerConfig cfg{"perm", units, links};
    const double before = chain_free_deflection(cfg, 8e3);
    std::shuffle(cfg.units.begin(), cfg.units.end(), rng);
    const double after = chain_free_deflection(cfg, 8e3);
    CHECK(after == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("single hinge chain reproduces torque over tip radius exactly") {
  const HingeUnit hinge = basic_hinge();
  const double radius = 18e-3;
  FingerConfig cfg{"one", {hinge}, {radius}};
  for (double theta : {0.0, 7.5, 15.0, 29.0}) {
    CHECK(chain_tip_force(cfg, 8e3, theta) ==
          doctest::Approx(hinge_torque(hinge, 8e3, theta) / radius)
              .epsilon(1e-12));
  }
}

TEST_CASE("one-pouch scorpion with matching electrode share degenerates to a hinge") {
  ScorpionUnit scorpion;
  scorpion.base_electrode_height = 10e-3;
  scorpion.pouch_free_lengths = {12e-3};
  scorpion.channel_width = 5e-3;
  scorpion.actuator_width = 40e-3;
  scorpion.film_thickness = 18e-6;
  scorpion.dielectric = {3.2, "test"};
  scorpion.pouch_max_deflection_deg = {30.0};

  const HingeUnit hinge = basic_hinge();
  FingerConfig chain_scorpion{"s", {scorpion}, {20e-3}};
  FingerConfig chain_hinge{"h", {hinge}, {20e-3}};
  const TorqueAngleCurve a = chain_tip_force_curve(chain_scorpion, 8e3, 41);
  const TorqueAngleCurve b = chain_tip_force_curve(chain_hinge, 8e3, 41);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].theta_deg ==
          doctest::Approx(b.samples[i].theta_deg).epsilon(1e-12));
    if (std::abs(b.samples[i].value) > 1e-15)
      CHECK(a.samples[i].value ==
            doctest::Approx(b.samples[i].value).epsilon(1e-9));
  }
}

TEST_CASE("tip force curve is non-increasing without prestress") {
  const FingerConfig cfg = fixtures::triple_config();
  const TorqueAngleCurve curve = chain_tip_force_curve(cfg, 8e3, 101);
  for (std::size_t i = 1; i < curve.samples.size(); ++i)
    CHECK(curve.samples[i].value <= curve.samples[i - 1].value + 1e-15);
}

TEST_CASE("tip force curve scales by four when voltage doubles") {
  const FingerConfig cfg = fixtures::hybrid_config();
  const TorqueAngleCurve base = chain_tip_force_curve(cfg, 4e3, 31);
  const TorqueAngleCurve doubled = chain_tip_force_curve(cfg, 8e3, 31);
  for (std::size_t i = 0; i < base.samples.size(); ++i)
    if (base.samples[i].value > 1e-15)
      CHECK(doubled.samples[i].value ==
            doctest::Approx(4.0 * base.samples[i].value).epsilon(1e-12));
}

TEST_CASE("bundled triple reaches 80 degrees and still pushes about 0.1 N") {
  const FingerConfig cfg = fixtures::triple_config();
  const double span = chain_free_deflection(cfg, fixtures::default_drive_voltage);
  CHECK(span >= 80.0);
  const double force =
      chain_tip_force(cfg, fixtures::default_drive_voltage, 80.0);
  CHECK(std::abs((force) - (0.1)) <= (0.02));
}

TEST_CASE("bundled scorpion runs past 50 degrees of free deflection") {
  const FingerConfig cfg = fixtures::scorpion_config();
  CHECK(chain_free_deflection(cfg, fixtures::default_drive_voltage) > 50.0);
}

TEST_CASE("crossover of two synthetic lines lands at the analytic root") {
  // 0.30 - 0.01 t == 0.25 - 0.005 t  =>  t = 10, value 0.20.
  const TorqueAngleCurve a = line_curve(0.30, -0.01, 0.0, 40.0);
  const TorqueAngleCurve b = line_curve(0.25, -0.005, 0.0, 40.0);
  const CrossoverResult result = crossover(a, b);
  REQUIRE(result.points.size() == 1);
  CHECK_FALSE(result.degenerate);
  CHECK(std::abs((result.points[0].theta_deg) - (10.0)) <= (0.02));
  CHECK(std::abs((result.points[0].value) - (0.20)) <= (1e-4));
}

TEST_CASE("identical curves report a degenerate overlap") {
  const TorqueAngleCurve a = line_curve(0.30, -0.01, 0.0, 40.0);
  const CrossoverResult result = crossover(a, a);
  CHECK(result.degenerate);
  CHECK(result.points.empty());
}

TEST_CASE("crossover rejects mode mismatch and disjoint domains") {
  TorqueAngleCurve a = line_curve(0.3, -0.01, 0.0, 40.0);
  TorqueAngleCurve b = line_curve(0.2, -0.01, 0.0, 40.0);
  b.mode = ForceMode::torque;
  CHECK_THROWS_AS(crossover(a, b), Error);
  const TorqueAngleCurve c = line_curve(0.2, -0.01, 50.0, 80.0);
  CHECK_THROWS_AS(crossover(a, c), Error);
}

TEST_CASE("fixture curves cross at 19 degrees, single hinge leading below") {
  const TorqueAngleCurve scorpion =
      curve_from_series(fixtures::scorpion_series());
  const TorqueAngleCurve pwt10 = curve_from_series(fixtures::pwt10_series());
  const CrossoverResult result = crossover(pwt10, scorpion);
  REQUIRE(result.points.size() == 1);
  CHECK(std::abs((result.points[0].theta_deg) - (19.0)) <= (2.0));
  CHECK(pwt10.value_at(5.0) > scorpion.value_at(5.0));
  CHECK(pwt10.value_at(40.0) < scorpion.value_at(40.0));
}

TEST_CASE("hybrid fixture dominates triple below the crossover, trails above") {
  const TorqueAngleCurve hybrid = curve_from_series(fixtures::hybrid_series());
  const TorqueAngleCurve triple = curve_from_series(fixtures::triple_series());
  for (double theta = 1.0; theta < 25.0; theta += 1.0)
    CHECK(hybrid.value_at(theta) > triple.value_at(theta));
  for (double theta = 28.0; theta < 55.0; theta += 1.0)
    CHECK(hybrid.value_at(theta) < triple.value_at(theta));
}

TEST_CASE("crossover matches a 0.001 degree brute-force scan on random pairs") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> c0(0.05, 0.4);
  std::uniform_real_distribution<double> c1(-8e-3, -1e-3);
  std::uniform_real_distribution<double> c2(-8e-5, 8e-5);
  int total_points = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto quad_curve = [&](double a0, double a1, double a2) {
      TorqueAngleCurve curve;
      curve.mode = ForceMode::tip_force;
      for (int i = 0; i <= 60; ++i) {
        const double theta = i;
        curve.samples.push_back({theta, a0 + theta * (a1 + theta * a2)});
      }
      return curve;
    };
    const TorqueAngleCurve a = quad_curve(c0(rng), c1(rng), c2(rng));
    const TorqueAngleCurve b = quad_curve(c0(rng), c1(rng), c2(rng));
    const CrossoverResult result = crossover(a, b);
    REQUIRE_FALSE(result.degenerate);

    // Brute force on the same interpolants.
    std::vector<double> brute;
    double prev = a.value_at(0.0) - b.value_at(0.0);
    for (double theta = 0.001; theta <= 60.0 + 1e-9; theta += 0.001) {
      const double d = a.value_at(std::min(theta, 60.0)) -
                       b.value_at(std::min(theta, 60.0));
      if (prev != 0.0 && d != 0.0 && (prev < 0.0) != (d < 0.0))
        brute.push_back(theta - 0.0005);
      prev = d;
    }
    REQUIRE(result.points.size() == brute.size());
    for (std::size_t i = 0; i < brute.size(); ++i)
      CHECK(std::abs(result.points[i].theta_deg - brute[i]) <= 0.02);
    total_points += static_cast<int>(brute.size());
  }
  CHECK(total_points > 20);  // the generator produces plenty of crossings
}
