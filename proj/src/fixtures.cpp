#include "hasel/fixtures.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "hasel/hinge.hpp"

namespace hasel::fixtures {

namespace {

struct Quad {
  double c0, c1, c2;
  double operator()(double theta) const { return c0 + theta * (c1 + theta * c2); }
};

struct Anchor {
  double theta;
  double value;
};

// Quadratic through three anchors, by Cramer's rule on the Vandermonde
// system. The anchors are the documented construction constraints.
Quad through(Anchor p, Anchor q, Anchor r) {
  const double det = (q.theta - p.theta) * (r.theta - p.theta) * (r.theta - q.theta);
  const double c2 = ((r.value - p.value) * (q.theta - p.theta) -
                     (q.value - p.value) * (r.theta - p.theta)) /
                    det;
  const double c1 = (q.value - p.value) / (q.theta - p.theta) -
                    c2 * (q.theta + p.theta);
  const double c0 = p.value - p.theta * (c1 + p.theta * c2);
  return {c0, c1, c2};
}

MeasurementSeries sample(const Quad& quad, double theta_end, double step,
                         const std::string& label) {
  MeasurementSeries series;
  series.label = label;
  series.mode = ForceMode::tip_force;
  series.source = SeriesSource::bundled_fixture;
  for (double theta = 0.0; theta < theta_end + 1e-9; theta += step)
    series.rows.push_back({theta, quad(theta), std::nullopt});
  if (series.rows.back().theta_deg < theta_end - 1e-9)
    series.rows.push_back({theta_end, quad(theta_end), std::nullopt});
  return series;
}

// Anchor values, in degrees and newtons.
//
// Single hinge, 10 mm free width: 0.30 N at rest, 0.2 N at 20 deg, free
// deflection 46 deg.
Quad pwt10_quad() { return through({0.0, 0.30}, {20.0, 0.2}, {46.0, 0.0}); }

// Two-pouch shared-electrode unit: crosses the single hinge exactly at
// 19 deg, runs out at 60 deg (about 30% more travel), starts weaker.
Quad scorpion_quad() {
  const Quad pwt = pwt10_quad();
  return through({0.0, 0.26}, {19.0, pwt(19.0)}, {60.0, 0.0});
}

// Three-hinge series toe: monotone decay from 0.32 N through 0.025 N at
// 56 deg to zero at 60 deg.
Quad triple_quad() { return through({0.0, 0.32}, {56.0, 0.025}, {60.0, 0.0}); }

// Shared-base-plus-front-hinge toe: the triple curve plus a parabola that
// vanishes at 26 and 56 deg, so the pair meets exactly there and the
// hybrid leads below 26 deg.
Quad hybrid_quad() {
  const Quad t = triple_quad();
  const double k = 0.06 / ((0.0 - 26.0) * (0.0 - 56.0));
  return {t.c0 + k * 26.0 * 56.0, t.c1 - k * (26.0 + 56.0), t.c2 + k};
}

Quad plt40_quad() { return pwt10_quad(); }

// The shorter electrode keeps the deflection range but loses 40% force.
Quad plt30_quad() {
  const Quad p = plt40_quad();
  return {0.6 * p.c0, 0.6 * p.c1, 0.6 * p.c2};
}

}  // namespace

DielectricSpec default_dielectric() {
  return {default_relative_permittivity, "Envirotemp FR3"};
}

const std::map<double, double>& pwt_max_deflection_table() {
  // Width [mm] -> max deflection [deg]. 12 mm at 50 deg and the decline
  // after it are anchored; the other entries interpolate that shape.
  static const std::map<double, double> table{
      {6.0, 38.0}, {8.0, 43.0}, {10.0, 46.0}, {12.0, 50.0}, {14.0, 45.0}};
  return table;
}

double interpolate_width_table(const std::map<double, double>& table,
                               double pouch_width_mm) {
  if (!std::isfinite(pouch_width_mm) || pouch_width_mm <= 0.0)
    fail(ErrorCode::domain_violation, "pouch width must be positive");
  if (table.empty())
    fail(ErrorCode::invariant_violation, "width calibration table is empty");
  auto hi = table.lower_bound(pouch_width_mm);
  if (hi == table.begin()) return hi->second;
  if (hi == table.end()) return std::prev(hi)->second;
  const auto lo = std::prev(hi);
  const double w = (pouch_width_mm - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

double pwt_max_deflection_deg(double pouch_width_mm) {
  return interpolate_width_table(pwt_max_deflection_table(), pouch_width_mm);
}

HingeUnit pwt_hinge(double pouch_width_mm) {
  HingeUnit unit;
  unit.geom.electrode_length = 10e-3;
  unit.geom.pouch_free_length = pouch_width_mm * 1e-3;
  unit.geom.actuator_width = 40e-3;
  unit.geom.film_thickness = default_film_thickness;
  unit.dielectric = default_dielectric();
  unit.max_deflection_deg = pwt_max_deflection_deg(pouch_width_mm);
  return unit;
}

double inverse_prestress_torque() {
  // Calibrated so the assisted grip beats the plain unit by 14.2% at the
  // default drive and grasp angle. Works out to a cord pull near 0.3 N at
  // the lever radius.
  const HingeUnit plain = pwt_hinge(6.0);
  return -0.142 *
         hinge_torque(plain, default_drive_voltage, default_grasp_angle_deg);
}

HingeUnit inverse_hinge() {
  HingeUnit unit = pwt_hinge(6.0);
  unit.prestress_torque = inverse_prestress_torque();
  return unit;
}

ScorpionUnit scorpion_unit() {
  ScorpionUnit unit;
  unit.base_electrode_height = 20e-3;
  unit.pouch_free_lengths = {10e-3, 10e-3};
  unit.channel_width = 5e-3;
  unit.actuator_width = 40e-3;
  unit.film_thickness = default_film_thickness;
  unit.dielectric = default_dielectric();
  // Each pouch is fed half the displaced volume, so it travels less than a
  // stand-alone 10 mm hinge; 28 deg per pouch puts the unit at 56 deg.
  unit.pouch_max_deflection_deg = {28.0};
  return unit;
}

FingerConfig single_hinge_config(const std::string& label, double pouch_width_mm) {
  const HingeUnit hinge = pwt_hinge(pouch_width_mm);
  return {label, {hinge}, {hinge.lever()}};
}

FingerConfig scorpion_config() {
  const ScorpionUnit unit = scorpion_unit();
  return {"scorpion", {unit}, {20e-3}};
}

FingerConfig triple_config() {
  // Three 10 mm electrode / 12 mm pouch hinges. The per-hinge travel of
  // 33 deg is calibrated so the chain still produces about 0.1 N of tip
  // force at 80 deg total deflection.
  HingeUnit hinge = pwt_hinge(12.0);
  hinge.max_deflection_deg = 33.0;
  return {"triple", {hinge, hinge, hinge}, {15e-3, 15e-3, 15e-3}};
}

FingerConfig hybrid_config() {
  HingeUnit front = pwt_hinge(12.0);
  front.max_deflection_deg = 33.0;
  return {"hybrid", {scorpion_unit(), front}, {20e-3, 15e-3}};
}

FingerConfig plt_config(double electrode_length_mm) {
  HingeUnit hinge = pwt_hinge(10.0);
  hinge.geom.actuator_width = electrode_length_mm * 1e-3;
  char label[32];
  std::snprintf(label, sizeof label, "plt%g", electrode_length_mm);
  return {label, {hinge}, {hinge.lever()}};
}

FingerConfig inverse_config() {
  const HingeUnit hinge = inverse_hinge();
  return {"inverse", {hinge}, {hinge.lever()}};
}

const std::map<std::string, FingerConfig>& builtin_designs() {
  static const std::map<std::string, FingerConfig> designs = [] {
    std::map<std::string, FingerConfig> map;
    for (double width : {6.0, 8.0, 10.0, 12.0, 14.0}) {
      char name[16];
      std::snprintf(name, sizeof name, "pwt%g", width);
      map.emplace(name, single_hinge_config(name, width));
    }
    map.emplace("plt40", plt_config(40.0));
    map.emplace("plt30", plt_config(30.0));
    map.emplace("inverse", inverse_config());
    map.emplace("scorpion", scorpion_config());
    map.emplace("triple", triple_config());
    map.emplace("hybrid", hybrid_config());
    return map;
  }();
  return designs;
}

MeasurementSeries pwt10_series() {
  return sample(pwt10_quad(), 46.0, 2.0, "pwt10");
}

MeasurementSeries scorpion_series() {
  return sample(scorpion_quad(), 60.0, 2.0, "scorpion");
}

MeasurementSeries triple_series() {
  return sample(triple_quad(), 60.0, 2.0, "triple");
}

MeasurementSeries hybrid_series() {
  return sample(hybrid_quad(), 60.0, 2.0, "hybrid");
}

MeasurementSeries plt40_series() {
  return sample(plt40_quad(), 46.0, 2.0, "plt40");
}

MeasurementSeries plt30_series() {
  return sample(plt30_quad(), 46.0, 2.0, "plt30");
}

std::vector<std::string> install_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io_error, "cannot create '" + dir + "': " + ec.message());

  std::vector<std::string> written;
  auto emit = [&](const MeasurementSeries& series,
                  std::vector<std::string> comments) {
    comments.insert(comments.begin(),
                    "reconstruction from quoted anchor values, not raw data");
    const std::string path = dir + "/" + series.label + ".csv";
    write_series_csv(series, path, comments);
    written.push_back(path);
  };

  emit(pwt10_series(),
       {"anchors: 0.30 N at 0 deg, 0.2 N at 20 deg, zero at 46 deg"});
  emit(scorpion_series(),
       {"anchors: 0.26 N at 0 deg, crossover with pwt10 at 19 deg, zero at 60 deg",
        "implied force at 20 deg: 0.2 N within tolerance"});
  emit(triple_series(),
       {"anchors: 0.32 N at 0 deg, 0.025 N at 56 deg, zero at 60 deg"});
  emit(hybrid_series(),
       {"anchors: triple curve plus a parabola vanishing at 26 and 56 deg",
        "meets triple at 26 deg and again at 56 deg (0.025 N)"});
  emit(plt40_series(),
       {"baseline 40 mm electrode length; same anchors as pwt10"});
  emit(plt30_series(),
       {"30 mm electrode length: 0.6 x the plt40 curve (40% force loss,",
        "unchanged deflection range)"});

  const std::string table_path = dir + "/pwt_max_deflection.csv";
  {
    std::FILE* out = std::fopen(table_path.c_str(), "w");
    if (!out) fail(ErrorCode::io_error, "cannot write '" + table_path + "'");
    std::fputs("# calibrated hinge travel per pouch free width\n", out);
    std::fputs("# only the 12 mm entry and the peak-at-12 shape are anchored;\n", out);
    std::fputs("# the remaining entries are interpolations of that shape\n", out);
    std::fputs("pouch_free_width_mm,theta_max_deg\n", out);
    for (const auto& [width, theta] : pwt_max_deflection_table())
      std::fprintf(out, "%g,%g\n", width, theta);
    std::fclose(out);
  }
  written.push_back(table_path);
  return written;
}

std::string default_fixture_dir() {
  if (const char* env = std::getenv("FIXTURE_DIR"); env && *env) return env;
  return "fixtures";
}

}  // namespace hasel::fixtures
