#include "hasel/empirics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace hasel {

const char* to_string(SeriesSource source) {
  switch (source) {
    case SeriesSource::measured_file: return "measured-file";
    case SeriesSource::bundled_fixture: return "bundled-fixture";
    case SeriesSource::synthetic: return "synthetic";
  }
  return "?";
}

void MeasurementSeries::validate() const {
  if (rows.size() < 3)
    fail(ErrorCode::too_few_rows, "series needs at least 3 rows");
  double prev = -std::numeric_limits<double>::infinity();
  for (const MeasurementRow& row : rows) {
    if (!std::isfinite(row.theta_deg) || !std::isfinite(row.value))
      fail(ErrorCode::non_numeric_cell, "series values must be finite");
    if (row.theta_deg == prev)
      fail(ErrorCode::duplicate_abscissa,
           "duplicate abscissa in series at theta=" + std::to_string(row.theta_deg));
    if (row.theta_deg < prev)
      fail(ErrorCode::non_increasing_abscissa,
           "series abscissae must be strictly increasing");
    prev = row.theta_deg;
  }
}

double MeasurementSeries::max_value() const {
  double best = -std::numeric_limits<double>::infinity();
  for (const MeasurementRow& row : rows) best = std::max(best, row.value);
  return best;
}

namespace {

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_cell(const std::string& cell, std::size_t line_no) {
  const std::string text = strip(cell);
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || text.empty())
    fail(ErrorCode::non_numeric_cell,
         "non-numeric cell '" + cell + "' on line " + std::to_string(line_no));
  return value;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

MeasurementSeries parse_series(std::istream& in, const std::string& label) {
  MeasurementSeries series;
  series.label = label;
  series.source = SeriesSource::measured_file;

  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool has_stderr_column = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.size() >= 3 && line[0] == '\xEF' &&
        line[1] == '\xBB' && line[2] == '\xBF')
      line.erase(0, 3);  // UTF-8 BOM
    const std::string text = strip(line);
    if (text.empty() || text[0] == '#') continue;
    if (!have_header) {
      const std::vector<std::string> cells = split_csv(text);
      std::vector<std::string> names;
      names.reserve(cells.size());
      for (const std::string& c : cells) names.push_back(strip(c));
      if (names.size() < 2 || names[0] != "theta_deg" || names[1] != "value")
        fail(ErrorCode::missing_columns,
             "header must be 'theta_deg,value[,stderr]', got '" + text + "'");
      if (names.size() == 3 && names[2] == "stderr")
        has_stderr_column = true;
      else if (names.size() > 2)
        fail(ErrorCode::missing_columns,
             "header must be 'theta_deg,value[,stderr]', got '" + text + "'");
      have_header = true;
      continue;
    }
    const std::vector<std::string> cells = split_csv(text);
    const std::size_t expected = has_stderr_column ? 3 : 2;
    if (cells.size() != expected)
      fail(ErrorCode::missing_columns,
           "expected " + std::to_string(expected) + " columns on line " +
               std::to_string(line_no));
    MeasurementRow row;
    row.theta_deg = parse_cell(cells[0], line_no);
    row.value = parse_cell(cells[1], line_no);
    if (has_stderr_column && !strip(cells[2]).empty())
      row.stderr_value = parse_cell(cells[2], line_no);
    series.rows.push_back(row);
  }
  if (!have_header)
    fail(ErrorCode::missing_columns, "file has no 'theta_deg,value' header");
  series.validate();
  return series;
}

MeasurementSeries load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open '" + path + "'");
  std::string label = path;
  const auto slash = label.find_last_of("/\\");
  if (slash != std::string::npos) label.erase(0, slash + 1);
  const auto dot = label.rfind('.');
  if (dot != std::string::npos) label.erase(dot);
  return parse_series(in, label);
}

void write_series_csv(const MeasurementSeries& series, const std::string& path,
                      const std::vector<std::string>& header_comments) {
  series.validate();
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot write '" + path + "'");
  for (const std::string& comment : header_comments) out << "# " << comment << "\n";
  out << "# label: " << series.label << "\n";
  out << "# force_mode: " << to_string(series.mode) << "\n";
  out << "# source: " << to_string(series.source) << "\n";
  const bool has_stderr =
      std::any_of(series.rows.begin(), series.rows.end(),
                  [](const MeasurementRow& r) { return r.stderr_value.has_value(); });
  out << (has_stderr ? "theta_deg,value,stderr\n" : "theta_deg,value\n");
  char buf[96];
  for (const MeasurementRow& row : series.rows) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g", row.theta_deg, row.value);
    out << buf;
    if (has_stderr) {
      if (row.stderr_value) {
        std::snprintf(buf, sizeof buf, ",%.9g", *row.stderr_value);
        out << buf;
      } else {
        out << ",";
      }
    }
    out << "\n";
  }
  if (!out) fail(ErrorCode::io_error, "write failed for '" + path + "'");
}

double QuadraticFit::evaluate(double theta_deg) const {
  const double slack = 1e-9 * std::max(1.0, std::abs(theta_max));
  if (theta_deg < theta_min - slack || theta_deg > theta_max + slack)
    fail(ErrorCode::domain_violation, "fit evaluated outside its domain");
  return c0 + theta_deg * (c1 + theta_deg * c2);
}

std::optional<double> QuadraticFit::zero_crossing() const {
  const double slack = 1e-6;
  auto in_range = [&](double t) {
    return t >= theta_min - slack && t <= theta_max + slack;
  };
  if (std::abs(c2) < 1e-300) {
    if (std::abs(c1) < 1e-300) return std::nullopt;
    const double root = -c0 / c1;
    return in_range(root) ? std::optional<double>(root) : std::nullopt;
  }
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (c1 + (c1 >= 0.0 ? sq : -sq));
  std::array<double, 2> roots{q / c2, std::abs(q) > 0.0 ? c0 / q
                                                        : std::numeric_limits<double>::quiet_NaN()};
  std::optional<double> best;
  for (double root : roots) {
    if (!std::isfinite(root) || !in_range(root)) continue;
    if (root < theta_min) continue;
    if (!best || root < *best) best = root;
  }
  return best;
}

namespace {

// Least squares on the scaled Vandermonde columns via modified
// Gram-Schmidt; the normal-equations route lives in the tests as the
// independent oracle.
QuadraticFit fit_points(const std::vector<double>& theta,
                        const std::vector<double>& value) {
  const std::size_t n = theta.size();
  std::array<std::vector<double>, 3> cols;
  for (int j = 0; j < 3; ++j) cols[j].resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    cols[0][i] = 1.0;
    cols[1][i] = theta[i];
    cols[2][i] = theta[i] * theta[i];
  }
  std::array<double, 3> scale{};
  for (int j = 0; j < 3; ++j) {
    double norm = 0.0;
    for (double v : cols[j]) norm += v * v;
    scale[j] = std::sqrt(norm);
    if (scale[j] <= 0.0)
      fail(ErrorCode::rank_deficient, "degenerate abscissae in fit");
    for (double& v : cols[j]) v /= scale[j];
  }

  double r[3][3] = {};
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < j; ++k) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += cols[k][i] * cols[j][i];
      r[k][j] = dot;
      for (std::size_t i = 0; i < n; ++i) cols[j][i] -= dot * cols[k][i];
    }
    double norm = 0.0;
    for (double v : cols[j]) norm += v * v;
    r[j][j] = std::sqrt(norm);
    if (r[j][j] < 1e-12)
      fail(ErrorCode::rank_deficient,
           "abscissae do not determine a quadratic (rank deficient)");
    for (double& v : cols[j]) v /= r[j][j];
  }

  std::array<double, 3> qty{};
  for (int j = 0; j < 3; ++j) {
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += cols[j][i] * value[i];
    qty[j] = dot;
  }
  std::array<double, 3> scaled{};
  for (int j = 2; j >= 0; --j) {
    double acc = qty[j];
    for (int k = j + 1; k < 3; ++k) acc -= r[j][k] * scaled[k];
    scaled[j] = acc / r[j][j];
  }

  QuadraticFit fit;
  fit.c0 = scaled[0] / scale[0];
  fit.c1 = scaled[1] / scale[1];
  fit.c2 = scaled[2] / scale[2];
  fit.theta_min = theta.front();
  fit.theta_max = theta.back();
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = value[i] - (fit.c0 + theta[i] * (fit.c1 + theta[i] * fit.c2));
    ss += res * res;
  }
  fit.rms_residual = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

}  // namespace

QuadraticFit fit_quadratic(const MeasurementSeries& series) {
  series.validate();
  std::vector<double> theta, value;
  theta.reserve(series.rows.size());
  value.reserve(series.rows.size());
  for (const MeasurementRow& row : series.rows) {
    theta.push_back(row.theta_deg);
    value.push_back(row.value);
  }
  return fit_points(theta, value);
}

QuadraticFit fit_quadratic(const TorqueAngleCurve& curve) {
  curve.validate();
  std::vector<double> theta, value;
  theta.reserve(curve.samples.size());
  value.reserve(curve.samples.size());
  for (const CurvePoint& p : curve.samples) {
    theta.push_back(p.theta_deg);
    value.push_back(p.value);
  }
  return fit_points(theta, value);
}

CrossoverResult crossover_from_fits(const QuadraticFit& a, const QuadraticFit& b) {
  const double lo = std::max(a.theta_min, b.theta_min);
  const double hi = std::min(a.theta_max, b.theta_max);
  if (lo >= hi)
    fail(ErrorCode::disjoint_domains, "fit domains do not overlap");

  const double d0 = a.c0 - b.c0;
  const double d1 = a.c1 - b.c1;
  const double d2 = a.c2 - b.c2;
  const double coeff_scale =
      std::max({1e-30, std::abs(a.c0), std::abs(b.c0), std::abs(a.c1),
                std::abs(b.c1), std::abs(a.c2), std::abs(b.c2)});

  CrossoverResult result;
  if (std::abs(d0) <= 1e-12 * coeff_scale && std::abs(d1) <= 1e-12 * coeff_scale &&
      std::abs(d2) <= 1e-12 * coeff_scale) {
    result.degenerate = true;
    return result;
  }

  std::vector<double> roots;
  if (std::abs(d2) <= 1e-15 * coeff_scale) {
    if (std::abs(d1) > 1e-15 * coeff_scale) roots.push_back(-d0 / d1);
  } else {
    const double disc = d1 * d1 - 4.0 * d2 * d0;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (d1 + (d1 >= 0.0 ? sq : -sq));
      roots.push_back(q / d2);
      if (std::abs(q) > 0.0) roots.push_back(d0 / q);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-9; }),
              roots.end());
  const double slack = 1e-9 * std::max(1.0, hi);
  for (double root : roots) {
    if (root < lo - slack || root > hi + slack) continue;
    const double clamped = std::clamp(root, a.theta_min, a.theta_max);
    result.points.push_back({root, a.evaluate(clamped)});
  }
  return result;
}

RatioReport ratio_report(const MeasurementSeries& a, const MeasurementSeries& b) {
  a.validate();
  b.validate();
  if (a.mode != b.mode)
    fail(ErrorCode::force_mode_mismatch,
         "cannot compare series of different force modes");
  const double lo = std::max(a.theta_min(), b.theta_min());
  const double hi = std::min(a.theta_max(), b.theta_max());
  if (lo >= hi)
    fail(ErrorCode::disjoint_domains, "series domains do not overlap");

  const TorqueAngleCurve ca = curve_from_series(a);
  const TorqueAngleCurve cb = curve_from_series(b);

  RatioReport report;
  report.mode = a.mode;
  report.max_value_change_pct = (b.max_value() / a.max_value() - 1.0) * 100.0;
  report.max_deflection_change_pct = (b.theta_max() / a.theta_max() - 1.0) * 100.0;

  std::vector<double> grid{lo, hi};
  for (const MeasurementSeries* s : {&a, &b})
    for (const MeasurementRow& row : s->rows)
      if (row.theta_deg > lo && row.theta_deg < hi) grid.push_back(row.theta_deg);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double x, double y) { return std::abs(x - y) < 1e-12; }),
             grid.end());

  for (double theta : grid) {
    const double va = ca.value_at(theta);
    const double vb = cb.value_at(theta);
    double pct;
    if (std::abs(va) < 1e-15 && std::abs(vb) < 1e-15)
      pct = 0.0;  // both vanish: no change
    else if (std::abs(va) < 1e-15)
      pct = std::numeric_limits<double>::quiet_NaN();
    else
      pct = (vb / va - 1.0) * 100.0;
    report.grid_theta_deg.push_back(theta);
    report.pointwise_change_pct.push_back(pct);
  }
  return report;
}

MeasurementSeries series_from_curve(const TorqueAngleCurve& curve,
                                    const std::string& label,
                                    SeriesSource source) {
  curve.validate();
  MeasurementSeries series;
  series.label = label;
  series.mode = curve.mode;
  series.source = source;
  series.rows.reserve(curve.samples.size());
  for (const CurvePoint& p : curve.samples)
    series.rows.push_back({p.theta_deg, p.value, std::nullopt});
  return series;
}

TorqueAngleCurve curve_from_series(const MeasurementSeries& series) {
  series.validate();
  TorqueAngleCurve curve;
  curve.kind = series.source == SeriesSource::measured_file ||
                       series.source == SeriesSource::bundled_fixture
                   ? CurveKind::measured
                   : CurveKind::analytic_sampled;
  curve.mode = series.mode;
  curve.samples.reserve(series.rows.size());
  for (const MeasurementRow& row : series.rows)
    curve.samples.push_back({row.theta_deg, row.value});
  return curve;
}

TorqueAngleCurve sample_fit(const QuadraticFit& fit, int n_samples, ForceMode mode) {
  if (n_samples < 3)
    fail(ErrorCode::domain_violation, "curve needs at least 3 samples");
  TorqueAngleCurve curve;
  curve.kind = CurveKind::fitted;
  curve.mode = mode;
  curve.samples.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double theta = fit.theta_min + (fit.theta_max - fit.theta_min) *
                                             static_cast<double>(i) /
                                             (n_samples - 1);
    curve.samples.push_back({theta, fit.evaluate(theta)});
  }
  return curve;
}

}  // namespace hasel
