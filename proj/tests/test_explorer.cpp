#include "hasel/explorer.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "hasel/fixtures.hpp"

using namespace hasel;

namespace {

SweepSpec width_sweep() {
  SweepSpec spec;
  spec.parameter = SweepParameter::pouch_free_width;
  spec.values = {6e-3, 8e-3, 10e-3, 12e-3, 14e-3};
  spec.base = fixtures::single_hinge_config("pwt", 10.0);
  spec.voltage = fixtures::default_drive_voltage;
  return spec;
}

}  // namespace

TEST_CASE("width sweep peaks in free deflection at 12 mm, about 50 degrees") {
  const std::vector<SweepRow> rows = run_sweep(width_sweep(), Objective{}, false);
  REQUIRE(rows.size() == 5);
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].status == "ok");
    if (rows[i].free_deflection_deg > rows[best].free_deflection_deg) best = i;
  }
  CHECK(rows[best].parameter_value == doctest::Approx(12e-3));
  CHECK(std::abs((rows[best].free_deflection_deg) - (50.0)) <= (1e-9));
}

TEST_CASE("voltage sweep shows the exact quadratic force ratio") {
  SweepSpec spec = width_sweep();
  spec.parameter = SweepParameter::voltage;
  spec.values = {4e3, 8e3};
  const std::vector<SweepRow> rows = run_sweep(spec, Objective{}, false);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].objective_value ==
        doctest::Approx(4.0 * rows[0].objective_value).epsilon(1e-12));
}

TEST_CASE("electrode length sweep 30 vs 40 mm gives the 0.750 model ratio") {
  SweepSpec spec = width_sweep();
  spec.parameter = SweepParameter::electrode_length;
  spec.values = {30e-3, 40e-3};
  const std::vector<SweepRow> rows = run_sweep(spec, Objective{}, false);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].objective_value / rows[1].objective_value ==
        doctest::Approx(0.750).epsilon(1e-9));
}

TEST_CASE("failed rows carry their error code instead of aborting the sweep") {
  SweepSpec spec = width_sweep();
  spec.parameter = SweepParameter::electrode_length;
  spec.values = {40e-3, -1e-3, 30e-3};  // the middle one violates invariants
  const std::vector<SweepRow> rows = run_sweep(spec, Objective{}, false);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].status == "ok");
  CHECK(rows[1].status == "invariant-violation");
  CHECK(rows[2].status == "ok");
}

TEST_CASE("concurrent and serial sweeps produce byte-identical tables") {
  SweepSpec spec = width_sweep();
  spec.values.clear();
  for (double w = 6.0; w <= 14.0; w += 0.25) spec.values.push_back(w * 1e-3);
  const std::string serial = sweep_table_csv(run_sweep(spec, Objective{}, false));
  const std::string parallel = sweep_table_csv(run_sweep(spec, Objective{}, true));
  CHECK(serial == parallel);
}

TEST_CASE("optimizer finds a synthetic unimodal maximizer at 12 mm") {
  DesignBounds bounds;
  bounds.pouch_free_width = {6e-3, 14e-3};
  const OptimizeResult result = optimize(
      bounds,
      [](const DesignPoint& p) {
        const double d = p.pouch_free_width - 12e-3;
        return 1.0 - d * d * 1e4;
      },
      60);
  CHECK(std::abs((result.best.pouch_free_width) - (12e-3)) <= (0.5e-3));
  CHECK(result.trace.size() <= 60);
}

TEST_CASE("optimizer returns the single point of degenerate bounds") {
  DesignBounds bounds;  // all ranges collapse by default
  const OptimizeResult result =
      optimize(bounds, [](const DesignPoint& p) { return p.voltage; }, 5);
  CHECK(result.best.pouch_free_width == 10e-3);
  CHECK(result.best.voltage == 8e3);
  CHECK(result.trace.size() == 1);
}

TEST_CASE("voltage-monotone objective drives the optimizer to the upper bound") {
  DesignBounds bounds;
  bounds.voltage = {4e3, 9e3};
  const OptimizeResult result =
      optimize(bounds, [](const DesignPoint& p) { return p.voltage; }, 40);
  CHECK(result.best.voltage == doctest::Approx(9e3).epsilon(1e-12));
}

TEST_CASE("optimizer never returns worse than its own best trace entry") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> peak(6e-3, 14e-3);
  for (int trial = 0; trial < 20; ++trial) {
    DesignBounds bounds;
    bounds.pouch_free_width = {6e-3, 14e-3};
    bounds.voltage = {4e3, 9e3};
    const double w0 = peak(rng);
    const OptimizeResult result = optimize(
        bounds,
        [&](const DesignPoint& p) {
          const double d = (p.pouch_free_width - w0) * 1e3;
          return p.voltage / 1e3 - d * d;
        },
        50);
    for (const Evaluation& e : result.trace)
      if (!e.failed) CHECK(result.best_value >= e.value);
  }
}

TEST_CASE("optimizer surfaces all-failed evaluations as a computation error") {
  DesignBounds bounds;
  bounds.voltage = {4e3, 9e3};
  CHECK_THROWS_AS(optimize(
                      bounds,
                      [](const DesignPoint&) -> double {
                        fail(ErrorCode::domain_violation, "nope");
                      },
                      10),
                  Error);
  CHECK_THROWS_AS(optimize(
                      bounds, [](const DesignPoint& p) { return p.voltage; }, 0),
                  Error);
}

TEST_CASE("grasp feasibility reproduces the 76 g case") {
  GraspCase grasp_case;
  grasp_case.object_mass = 0.076;
  grasp_case.n_toes = 4;
  grasp_case.normal_force_per_toe = 0.2;
  grasp_case.friction_mu = 1.0;
  const GraspReport report = grasp_feasibility(grasp_case);
  CHECK(std::abs((report.required_mu) - (0.932)) <= (1e-3));
  CHECK(report.holds);
  CHECK(std::abs((report.max_payload_kg * 1e3) - (81.5)) <= (0.1));
}

TEST_CASE("zero mass holds trivially with zero required friction") {
  GraspCase grasp_case;
  grasp_case.object_mass = 0.0;
  const GraspReport report = grasp_feasibility(grasp_case);
  CHECK(report.required_mu == 0.0);
  CHECK(report.holds);
}

TEST_CASE("feasibility is monotone in friction, toes and force") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> mass(0.0, 0.5);
  std::uniform_real_distribution<double> force(0.05, 0.5);
  std::uniform_real_distribution<double> mu(0.2, 2.0);
  for (int trial = 0; trial < 300; ++trial) {
    GraspCase base;
    base.object_mass = mass(rng);
    base.n_toes = 1 + static_cast<int>(rng() % 6);
    base.normal_force_per_toe = force(rng);
    base.friction_mu = mu(rng);
    const bool holds = grasp_feasibility(base).holds;
    if (!holds) continue;
    GraspCase more = base;
    more.friction_mu *= 1.5;
    CHECK(grasp_feasibility(more).holds);
    more = base;
    more.n_toes += 2;
    CHECK(grasp_feasibility(more).holds);
    more = base;
    more.normal_force_per_toe *= 2.0;
    CHECK(grasp_feasibility(more).holds);
    // The required friction reconstructs the weight exactly.
    const GraspReport report = grasp_feasibility(base);
    CHECK(report.required_mu * base.n_toes * base.normal_force_per_toe ==
          doctest::Approx(base.object_mass * base.gravity).epsilon(1e-12));
  }
}

TEST_CASE("grasp case invariants") {
  GraspCase bad;
  bad.object_mass = -0.1;
  CHECK_THROWS_AS(grasp_feasibility(bad), Error);
  bad = GraspCase{};
  bad.n_toes = 0;
  CHECK_THROWS_AS(grasp_feasibility(bad), Error);
  bad = GraspCase{};
  bad.normal_force_per_toe = 0.0;
  CHECK_THROWS_AS(grasp_feasibility(bad), Error);
}
