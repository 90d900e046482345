#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ergorate/errors.hpp"
#include "ergorate/rate_lab.hpp"

namespace ergorate {

std::vector<double> geometric_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi > lo) || per_decade < 1) {
    throw std::invalid_argument("geometric_grid: need 0 < lo < hi and per_decade >= 1");
  }
  const double decades = std::log10(hi / lo);
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(decades * per_decade - 1e-9)));
  std::vector<double> grid(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    grid[k] = lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(n));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<DefectSample> upper_envelope(std::span<const DefectSample> samples) {
  std::vector<DefectSample> out(samples.begin(), samples.end());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double window_end = 10.0 * samples[i].T * (1.0 + 1e-12);
    for (std::size_t j = i + 1; j < samples.size() && samples[j].T <= window_end; ++j) {
      out[i].defect = std::max(out[i].defect, samples[j].defect);
    }
  }
  return out;
}

RateFit loglog_fit(std::span<const DefectSample> samples, FitMode mode) {
  if (samples.size() < 8) throw DegenerateFit("loglog_fit: need at least 8 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].T > 0.0)) throw DegenerateFit("loglog_fit: T must be positive");
    if (i > 0 && !(samples[i].T > samples[i - 1].T)) {
      throw DegenerateFit("loglog_fit: T must be strictly increasing");
    }
  }
  if (samples.back().T < 10.0 * samples.front().T * (1.0 - 1e-12)) {
    throw DegenerateFit("loglog_fit: T-range shorter than one decade");
  }
  const auto fitted = mode == FitMode::envelope ? upper_envelope(samples)
                                                 : std::vector<DefectSample>(samples.begin(), samples.end());

  const bool constant = std::all_of(fitted.begin(), fitted.end(),
                                    [&](const DefectSample& s) { return s.defect == fitted.front().defect; });
  if (constant) throw DegenerateFit("loglog_fit: constant defects, r² undefined");

  const auto n = static_cast<double>(fitted.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& s : fitted) {
    if (!(s.defect > 0.0)) throw DegenerateFit("loglog_fit: zero defect has no logarithm");
    mean_x += std::log(s.T);
    mean_y += std::log(s.defect);
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& s : fitted) {
    const double dx = std::log(s.T) - mean_x;
    const double dy = std::log(s.defect) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.r_squared = std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  fit.t_min = samples.front().T;
  fit.t_max = samples.back().T;
  fit.samples = samples.size();
  return fit;
}

}  // namespace ergorate
