#include "hasel/empirics.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "doctest.h"
#include "hasel/fixtures.hpp"

using namespace hasel;

namespace {

MeasurementSeries make_series(const std::vector<std::pair<double, double>>& pts) {
  MeasurementSeries series;
  series.label = "test";
  series.mode = ForceMode::tip_force;
  series.source = SeriesSource::synthetic;
  for (const auto& [theta, value] : pts)
    series.rows.push_back({theta, value, std::nullopt});
  return series;
}

// Independent least-squares oracle: explicit normal equations solved with
// Cramer's rule in extended precision.
std::array<double, 3> normal_equations_fit(const MeasurementSeries& series) {
  long double s[5] = {}, b[3] = {};
  for (const MeasurementRow& row : series.rows) {
    long double p = 1.0L;
    for (int k = 0; k < 5; ++k) {
      s[k] += p;
      if (k < 3) b[k] += p * row.value;
      p *= row.theta_deg;
    }
  }
  const long double m[3][3] = {{s[0], s[1], s[2]},
                               {s[1], s[2], s[3]},
                               {s[2], s[3], s[4]}};
  auto det3 = [](const long double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const long double det = det3(m);
  std::array<double, 3> out{};
  for (int col = 0; col < 3; ++col) {
    long double mc[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) mc[i][j] = (j == col) ? b[i] : m[i][j];
    out[col] = static_cast<double>(det3(mc) / det);
  }
  return out;
}

}  // namespace

TEST_CASE("well-formed file parses into a validated series") {
  std::istringstream in(
      "# comment line\n"
      "theta_deg,value\n"
      "0,0.30\n"
      "10,0.25\n"
      "20,0.20\n"
      "30,0.12\n"
      "40,0.05\n");
  const MeasurementSeries series = parse_series(in, "demo");
  CHECK(series.rows.size() == 5);
  CHECK(series.theta_max() == 40.0);
}

TEST_CASE("stderr column is carried when present") {
  std::istringstream in(
      "theta_deg,value,stderr\n"
      "0,0.30,0.01\n"
      "10,0.25,\n"
      "20,0.20,0.02\n");
  const MeasurementSeries series = parse_series(in, "demo");
  CHECK(series.rows[0].stderr_value == 0.01);
  CHECK_FALSE(series.rows[1].stderr_value.has_value());
}

TEST_CASE("each malformed input gets its own error code") {
  auto code_of = [](const char* text) {
    std::istringstream in(text);
    try {
      parse_series(in, "bad");
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::io_error;  // not reached on the cases below
  };
  CHECK(code_of("theta_deg,value\n0,1\n20,0.5\n20,0.4\n30,0.2\n") ==
        ErrorCode::duplicate_abscissa);
  CHECK(code_of("theta_deg,value\n0,1\n20,0.5\n10,0.4\n30,0.2\n") ==
        ErrorCode::non_increasing_abscissa);
  CHECK(code_of("theta_deg,value\n0,1\n10,0.5\n") == ErrorCode::too_few_rows);
  CHECK(code_of("theta_deg,value\n") == ErrorCode::too_few_rows);
  CHECK(code_of("angle,force\n0,1\n10,0.5\n20,0.2\n") ==
        ErrorCode::missing_columns);
  CHECK(code_of("theta_deg,value\n0,1\n10,abc\n20,0.2\n") ==
        ErrorCode::non_numeric_cell);
  CHECK(code_of("theta_deg,value\n0,1\n10\n20,0.2\n") ==
        ErrorCode::missing_columns);
}

TEST_CASE("fit recovers a noiseless quadratic to 1e-9") {
  std::vector<std::pair<double, double>> pts;
  for (double theta = 0.0; theta <= 50.0; theta += 10.0)
    pts.emplace_back(theta, 0.30 - 0.010 * theta + 0.0001 * theta * theta);
  const QuadraticFit fit = fit_quadratic(make_series(pts));
  CHECK(fit.c0 == doctest::Approx(0.30).epsilon(1e-9));
  CHECK(fit.c1 == doctest::Approx(-0.010).epsilon(1e-9));
  CHECK(fit.c2 == doctest::Approx(0.0001).epsilon(1e-9));
  CHECK(fit.rms_residual <= 1e-10);
}

TEST_CASE("fit of constant data is the constant") {
  const QuadraticFit fit =
      fit_quadratic(make_series({{0.0, 0.2}, {10.0, 0.2}, {20.0, 0.2}, {30.0, 0.2}}));
  CHECK(std::abs((fit.c0) - (0.2)) <= (1e-12));
  CHECK(std::abs((fit.c1) - (0.0)) <= (1e-12));
  CHECK(std::abs((fit.c2) - (0.0)) <= (1e-14));
}

TEST_CASE("three distinct points are interpolated exactly") {
  const QuadraticFit fit =
      fit_quadratic(make_series({{0.0, 1.0}, {7.0, -2.0}, {30.0, 4.0}}));
  CHECK(fit.rms_residual <= 1e-10);
}

TEST_CASE("fit matches the normal-equations oracle under noise") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> noise(-1e-3, 1e-3);
  std::vector<std::pair<double, double>> pts;
  for (double theta = 0.0; theta <= 60.0; theta += 3.0)
    pts.emplace_back(theta,
                     0.28 - 0.007 * theta + 5e-5 * theta * theta + noise(rng));
  const MeasurementSeries series = make_series(pts);
  const QuadraticFit fit = fit_quadratic(series);
  const std::array<double, 3> oracle = normal_equations_fit(series);
  CHECK(fit.c0 == doctest::Approx(oracle[0]).epsilon(1e-9));
  CHECK(fit.c1 == doctest::Approx(oracle[1]).epsilon(1e-9));
  CHECK(fit.c2 == doctest::Approx(oracle[2]).epsilon(1e-9));
}

TEST_CASE("fit residual never beats the best constant fit") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<double, double>> pts;
    const int n = 4 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) pts.emplace_back(i * 3.0, value(rng));
    const MeasurementSeries series = make_series(pts);
    const QuadraticFit fit = fit_quadratic(series);
    double mean = 0.0;
    for (const auto& [theta, v] : pts) mean += v;
    mean /= n;
    double ss = 0.0;
    for (const auto& [theta, v] : pts) ss += (v - mean) * (v - mean);
    const double const_rms = std::sqrt(ss / n);
    CHECK(fit.rms_residual <= const_rms + 1e-12);
  }
}

TEST_CASE("crossover from fits finds a linear-difference root") {
  const QuadraticFit a{0.30, -0.010, 0.0, 0.0, 0.0, 40.0};
  const QuadraticFit b{0.25, -0.005, 0.0, 0.0, 0.0, 40.0};
  const CrossoverResult result = crossover_from_fits(a, b);
  REQUIRE(result.points.size() == 1);
  CHECK(result.points[0].theta_deg == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("negative discriminant yields no crossover") {
  const QuadraticFit a{0.5, 0.0, 1e-4, 0.0, 0.0, 40.0};
  const QuadraticFit b{0.4, 0.0, 1e-4, 0.0, 0.0, 40.0};
  CHECK(crossover_from_fits(a, b).points.empty());
}

TEST_CASE("identical coefficient triples are degenerate") {
  const QuadraticFit a{0.3, -0.01, 1e-4, 0.0, 0.0, 40.0};
  CHECK(crossover_from_fits(a, a).degenerate);
}

TEST_CASE("disjoint fit domains are rejected") {
  const QuadraticFit a{0.3, -0.01, 0.0, 0.0, 0.0, 20.0};
  const QuadraticFit b{0.3, -0.02, 0.0, 0.0, 30.0, 50.0};
  CHECK_THROWS_AS(crossover_from_fits(a, b), Error);
}

TEST_CASE("fixture pipeline recovers the published crossovers") {
  const QuadraticFit scorpion = fit_quadratic(fixtures::scorpion_series());
  const QuadraticFit pwt10 = fit_quadratic(fixtures::pwt10_series());
  const CrossoverResult sp = crossover_from_fits(scorpion, pwt10);
  REQUIRE(sp.points.size() >= 1);
  CHECK(std::abs((sp.points[0].theta_deg) - (19.0)) <= (2.0));

  const QuadraticFit hybrid = fit_quadratic(fixtures::hybrid_series());
  const QuadraticFit triple = fit_quadratic(fixtures::triple_series());
  const CrossoverResult ht = crossover_from_fits(hybrid, triple);
  REQUIRE(ht.points.size() == 2);
  CHECK(std::abs((ht.points[0].theta_deg) - (26.0)) <= (3.0));
  CHECK(std::abs((ht.points[1].theta_deg) - (56.0)) <= (3.0));
  CHECK(std::abs((ht.points[1].value) - (0.025)) <= (0.01));
}

TEST_CASE("scorpion fixture free deflection exceeds 50 degrees, 0.2 N at 20") {
  const QuadraticFit fit = fit_quadratic(fixtures::scorpion_series());
  const auto zero = fit.zero_crossing();
  REQUIRE(zero.has_value());
  CHECK(*zero > 50.0);
  CHECK(std::abs((fit.evaluate(20.0)) - (0.2)) <= (0.02));
}

TEST_CASE("two crossover routes agree within half a degree on dense samples") {
  const QuadraticFit fits[2] = {fit_quadratic(fixtures::hybrid_series()),
                                fit_quadratic(fixtures::triple_series())};
  const TorqueAngleCurve dense_a = sample_fit(fits[0], 121, ForceMode::tip_force);
  const TorqueAngleCurve dense_b = sample_fit(fits[1], 121, ForceMode::tip_force);
  const CrossoverResult linear = hasel::crossover(dense_a, dense_b);
  const CrossoverResult analytic = crossover_from_fits(fits[0], fits[1]);
  REQUIRE(linear.points.size() == analytic.points.size());
  for (std::size_t i = 0; i < linear.points.size(); ++i)
    CHECK(std::abs(linear.points[i].theta_deg - analytic.points[i].theta_deg) <=
          0.5);
}

TEST_CASE("ratio report recovers a uniform 26.5% increase") {
  std::vector<std::pair<double, double>> base;
  for (double theta = 0.0; theta <= 40.0; theta += 5.0)
    base.emplace_back(theta, 0.30 - 0.006 * theta);
  const MeasurementSeries a = make_series(base);
  MeasurementSeries b = a;
  for (MeasurementRow& row : b.rows) row.value *= 1.265;
  const RatioReport report = ratio_report(a, b);
  CHECK(std::abs((report.max_value_change_pct) - (26.5)) <= (1e-9));
  for (double pct : report.pointwise_change_pct)
    CHECK(std::abs((pct) - (26.5)) <= (1e-9));
  CHECK(std::abs((report.max_deflection_change_pct) - (0.0)) <= (1e-12));
}

TEST_CASE("ratio report of a series against itself is identically zero") {
  const MeasurementSeries series = fixtures::pwt10_series();
  const RatioReport report = ratio_report(series, series);
  CHECK(std::abs((report.max_value_change_pct) - (0.0)) <= (1e-12));
  CHECK(std::abs((report.max_deflection_change_pct) - (0.0)) <= (1e-12));
  for (double pct : report.pointwise_change_pct)
    CHECK(std::abs((pct) - (0.0)) <= (1e-12));
}

TEST_CASE("shorter electrode fixture loses about 40% of its peak force") {
  const RatioReport report =
      ratio_report(fixtures::plt40_series(), fixtures::plt30_series());
  CHECK(std::abs((report.max_value_change_pct) - (-40.0)) <= (0.5));
  CHECK(std::abs((report.max_deflection_change_pct) - (0.0)) <= (1e-9));
}

TEST_CASE("ratio report rejects mode mismatches") {
  MeasurementSeries a = fixtures::pwt10_series();
  MeasurementSeries b = fixtures::pwt10_series();
  b.mode = ForceMode::torque;
  CHECK_THROWS_AS(ratio_report(a, b), Error);
}

TEST_CASE("series round-trips through its CSV form") {
  const MeasurementSeries series = fixtures::triple_series();
  const std::string path = "triple_roundtrip_test.csv";
  write_series_csv(series, path, {"round trip"});
  const MeasurementSeries loaded = load_series(path);
  REQUIRE(loaded.rows.size() == series.rows.size());
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    CHECK(loaded.rows[i].theta_deg ==
          doctest::Approx(series.rows[i].theta_deg).epsilon(1e-9));
    CHECK(loaded.rows[i].value ==
          doctest::Approx(series.rows[i].value).epsilon(1e-9));
  }
  std::remove(path.c_str());
}
