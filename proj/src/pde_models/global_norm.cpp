#include <cmath>
#include <stdexcept>

#include "ergorate/pde_models.hpp"
#include "ergorate/rate_lab.hpp"

namespace ergorate {

LqNorm global_lq_norm(std::span<const DefectSample> curve, double q, double T_min) {
  if (curve.size() < 8) throw std::invalid_argument("global_lq_norm: need at least 8 samples");
  if (!(q > 0.0)) throw std::invalid_argument("global_lq_norm: q must be positive");
  if (!(T_min > 0.0)) throw std::invalid_argument("global_lq_norm: T_min must be positive");
  if (curve.back().T < 1e3 * curve.front().T * (1.0 - 1e-12)) {
    throw std::invalid_argument("global_lq_norm: curve must span at least three decades of T");
  }

  const RateFit fit = loglog_fit(curve, FitMode::envelope);
  if (fit.slope * q >= -1.0) return {true, 0.0};

  // ∫ D^q dT = ∫ D^q T d(log T)
  auto integrand = [q](const DefectSample& s) { return std::pow(s.defect, q) * s.T; };
  double integral = 0.0;
  const DefectSample* previous = nullptr;
  for (const auto& s : curve) {
    if (s.T < T_min) continue;
    if (previous == nullptr) {
      if (T_min < s.T) integral += std::pow(s.defect, q) * (s.T - T_min);
    } else {
      integral += 0.5 * (integrand(*previous) + integrand(s)) * std::log(s.T / previous->T);
    }
    previous = &s;
  }
  if (previous == nullptr) throw std::invalid_argument("global_lq_norm: T_min beyond the sampled curve");

  const double t_last = curve.back().T;
  const double fitted_last = std::exp(fit.intercept) * std::pow(t_last, fit.slope);
  integral += std::pow(fitted_last, q) * t_last / (-(fit.slope * q) - 1.0);
  return {false, std::pow(integral, 1.0 / q)};
}

}  // namespace ergorate
