#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hasel/curve.hpp"

namespace hasel {

enum class SeriesSource { measured_file, bundled_fixture, synthetic };

const char* to_string(SeriesSource source);

struct MeasurementRow {
  double theta_deg;
  double value;
  std::optional<double> stderr_value;  // carried but unused by the fits
};

/// Ingested force/torque-versus-angle data. At least three rows, strictly
/// increasing abscissae, finite values.
struct MeasurementSeries {
  std::string label;
  ForceMode mode = ForceMode::tip_force;
  std::vector<MeasurementRow> rows;
  SeriesSource source = SeriesSource::measured_file;

  void validate() const;
  double theta_min() const { return rows.front().theta_deg; }
  double theta_max() const { return rows.back().theta_deg; }
  double max_value() const;
};

/// CSV schema: UTF-8, comma-separated, header `theta_deg,value[,stderr]`,
/// `#` starts a comment line, decimal point `.`.
MeasurementSeries load_series(const std::string& path);
MeasurementSeries parse_series(std::istream& in, const std::string& label);

void write_series_csv(const MeasurementSeries& series, const std::string& path,
                      const std::vector<std::string>& header_comments = {});

struct QuadraticFit {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double rms_residual = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;

  double evaluate(double theta_deg) const;  // in-domain only

  /// First zero crossing at or after theta_min; the free deflection a
  /// fitted curve implies. Empty when the fit never crosses zero on its
  /// domain.
  std::optional<double> zero_crossing() const;
};

/// Ordinary least squares on (1, theta, theta^2).
QuadraticFit fit_quadratic(const MeasurementSeries& series);
QuadraticFit fit_quadratic(const TorqueAngleCurve& curve);

/// Real roots of the coefficient difference inside the domain
/// intersection, by the quadratic formula. Identical coefficient triples
/// set the degenerate flag.
CrossoverResult crossover_from_fits(const QuadraticFit& a,
                                    const QuadraticFit& b);

struct RatioReport {
  ForceMode mode;
  // All percentages are signed changes of b relative to a.
  double max_value_change_pct;
  double max_deflection_change_pct;
  std::vector<double> grid_theta_deg;
  std::vector<double> pointwise_change_pct;
};

/// Compares series b against baseline a: peak-value change, pointwise
/// change on the overlapping grid (linear interpolation, no
/// extrapolation), and change of the maximum recorded deflection.
RatioReport ratio_report(const MeasurementSeries& a,
                         const MeasurementSeries& b);

MeasurementSeries series_from_curve(const TorqueAngleCurve& curve,
                                    const std::string& label,
                                    SeriesSource source = SeriesSource::synthetic);

TorqueAngleCurve curve_from_series(const MeasurementSeries& series);

/// Dense resampling of a fit as a piecewise-linear curve.
TorqueAngleCurve sample_fit(const QuadraticFit& fit, int n_samples,
                            ForceMode mode);

}  // namespace hasel
