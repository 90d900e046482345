#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ergorate/spectral_core.hpp"

namespace ergorate {

/// Geometric grid from lo to hi (both included) with `per_decade` points per
/// factor of ten.
std::vector<double> geometric_grid(double lo, double hi, int per_decade);

enum class FitMode {
  envelope,  // fit the forward one-decade running maximum of the defect
  raw,
};

struct RateFit {
  double slope = 0.0;      // estimates -ℓ/2
  double intercept = 0.0;  // estimates log C
  double r_squared = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t samples = 0;
};

/// envelope[i] = max{defect_j : T_i ≤ T_j ≤ 10 T_i}.  The sinc² factor makes
/// pure-point defects oscillate down to zero; the rate bound controls this
/// majorant.
std::vector<DefectSample> upper_envelope(std::span<const DefectSample> samples);

/// Ordinary least squares of log defect on log T.  Needs at least 8 samples,
/// strictly increasing T spanning a decade, and positive (fitted) defects;
/// throws DegenerateFit otherwise.
RateFit loglog_fit(std::span<const DefectSample> samples, FitMode mode = FitMode::envelope);

/// A_hat = max over the grid of μ((-λ,λ)\{0}) / λ^p.
double dk_condition_i(const SpectralMeasure& mu, double p, std::span<const double> lambda_grid);

/// B_hat = max over T of T^{p/2} ‖(P^T - P)f‖ / ‖f‖.
double dk_condition_ii(const SpectralMeasure& mu, double p, std::span<const double> T_values);

/// Grids for the two-sided equivalence check.  Condition (i) is evaluated on a
/// geometric λ-grid [lambda_min, r] and again on the refined grid reaching
/// r·(lambda_min/r)², twice as many decades toward 0.  Condition (ii) is
/// evaluated up to t_max and again up to growth·t_max.
struct DKGrids {
  double r = 0.5;
  double lambda_min = 1e-4;
  int lambda_per_decade = 16;
  double t_min = 10.0;
  double t_max = 1e4;
  int t_per_decade = 16;
  double growth = 10.0;
  double drift_tolerance = 0.05;
};

struct DKReport {
  double p = 0.0;
  double a_base = 0.0;
  double a_refined = 0.0;
  double b_base = 0.0;
  double b_extended = 0.0;
  double a_hat = 0.0;  // +inf when condition (i) drifts under refinement
  double b_hat = 0.0;  // +inf when condition (ii) drifts under T_max growth
  bool a_finite = false;
  bool b_finite = false;

  double a_drift() const;
  double b_drift() const;
  /// Both conditions hold or both fail.
  bool consistent() const { return a_finite == b_finite; }
};

DKReport dk_equivalence_report(const SpectralMeasure& mu, double p, const DKGrids& grids);

/// One row of a defect sweep report.
struct ReportRow {
  double T = 0.0;
  double defect = 0.0;
  double bound = 0.0;
  double scaled_defect = 0.0;  // T^{p/2} · defect
};

/// Comma-separated rows "T,defect,bound,scaled_defect" under a header, then a
/// footer of "# key,value" lines with the fit parameters.
void write_rate_report(std::ostream& out, std::span<const ReportRow> rows, const RateFit& fit);

/// "%.17g".
std::string format_number(double v);

}  // namespace ergorate
