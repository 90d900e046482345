#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ergorate/rate_lab.hpp"

namespace ergorate {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

double relative_drift(double base, double other) {
  if (base == 0.0) return other == 0.0 ? 0.0 : kInfinity;
  return std::abs(other - base) / std::abs(base);
}

}  // namespace

double dk_condition_i(const SpectralMeasure& mu, double p, std::span<const double> lambda_grid) {
  double a_hat = 0.0;
  for (double lambda : lambda_grid) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dk_condition_i: grid must lie in (0, r]");
    const double ratio = mu.window_mass(lambda) / std::pow(lambda, p);
    if (!std::isfinite(ratio)) return kInfinity;
    a_hat = std::max(a_hat, ratio);
  }
  return a_hat;
}

double dk_condition_ii(const SpectralMeasure& mu, double p, std::span<const double> T_values) {
  const double mass = mu.total_mass();
  if (mass == 0.0) return 0.0;
  const double norm = std::sqrt(mass);
  double b_hat = 0.0;
  for (const auto& s : defect_curve(mu, T_values)) {
    b_hat = std::max(b_hat, std::pow(s.T, p / 2.0) * s.defect / norm);
  }
  return b_hat;
}

double DKReport::a_drift() const { return relative_drift(a_base, a_refined); }
double DKReport::b_drift() const { return relative_drift(b_base, b_extended); }

DKReport dk_equivalence_report(const SpectralMeasure& mu, double p, const DKGrids& grids) {
  if (!(p > 0.0 && p < 2.0)) throw std::invalid_argument("dk_equivalence_report: p must lie in (0,2)");
  if (!(grids.lambda_min > 0.0 && grids.lambda_min < grids.r)) {
    throw std::invalid_argument("dk_equivalence_report: need 0 < lambda_min < r");
  }
  if (grids.t_max < 1e3 * grids.t_min * (1.0 - 1e-12)) {
    throw std::invalid_argument("dk_equivalence_report: T range must cover three decades");
  }
  if (!(grids.growth > 1.0)) throw std::invalid_argument("dk_equivalence_report: growth must exceed 1");

  DKReport report;
  report.p = p;

  const double ratio = grids.lambda_min / grids.r;
  const auto lambda_base = geometric_grid(grids.lambda_min, grids.r, grids.lambda_per_decade);
  const auto lambda_refined = geometric_grid(grids.r * ratio * ratio, grids.r, grids.lambda_per_decade);
  report.a_base = dk_condition_i(mu, p, lambda_base);
  report.a_refined = dk_condition_i(mu, p, lambda_refined);
  report.a_finite = std::isfinite(report.a_refined) && report.a_drift() < grids.drift_tolerance;
  report.a_hat = report.a_finite ? report.a_refined : kInfinity;

  const auto t_base = geometric_grid(grids.t_min, grids.t_max, grids.t_per_decade);
  const auto t_extended = geometric_grid(grids.t_min, grids.growth * grids.t_max, grids.t_per_decade);
  report.b_base = dk_condition_ii(mu, p, t_base);
  report.b_extended = dk_condition_ii(mu, p, t_extended);
  report.b_finite = std::isfinite(report.b_extended) && report.b_drift() < grids.drift_tolerance;
  report.b_hat = report.b_finite ? report.b_extended : kInfinity;
  return report;
}

}  // namespace ergorate
