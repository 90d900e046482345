#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ergorate/spectral_core.hpp"

namespace ergorate {

namespace {

void require_positive_time(double T, const char* where) {
  if (!std::isfinite(T) || !(T > 0.0)) {
    throw std::invalid_argument(std::string(where) + ": T must be positive and finite");
  }
}

}  // namespace

double kernel_projection_norm(const SpectralMeasure& mu) {
  return std::sqrt(mu.kernel_weight());
}

double fejer_defect(const SpectralMeasure& mu, double T) {
  require_positive_time(T, "fejer_defect");
  const double squared = mu.fejer_atom_sum(T) + mu.fejer_density_integral(T);
  return std::sqrt(std::max(0.0, squared));
}

double time_average_exact(const HermitianModel& model, double T) {
  require_positive_time(T, "time_average_exact");
  const auto& lambda = model.eigenvalues();
  const auto& c = model.coefficients();
  double sum = 0.0;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (lambda[j] == 0.0) continue;
    const double s = sinc(T * lambda[j]);
    sum += std::norm(c[j]) * s * s;
  }
  return std::sqrt(sum);
}

double time_domain_defect(const HermitianModel& model, double T, int nodes) {
  if (nodes < 2) throw std::invalid_argument("time_domain_defect: nodes must be at least 2");
  require_positive_time(T, "time_domain_defect");
  const SymmetricTimeRule rule(T, nodes);
  const auto& lambda = model.eigenvalues();
  const auto& c = model.coefficients();
  double sum = 0.0;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    std::complex<double> component = c[j] * rule.average_phase(lambda[j]);
    if (lambda[j] == 0.0) component -= c[j];
    sum += std::norm(component);
  }
  return std::sqrt(sum);
}

std::vector<DefectSample> defect_curve(const SpectralMeasure& mu, std::span<const double> T_values) {
  if (T_values.empty()) throw std::invalid_argument("defect_curve: empty T list");
  for (std::size_t i = 0; i < T_values.size(); ++i) {
    require_positive_time(T_values[i], "defect_curve");
    if (i > 0 && !(T_values[i] > T_values[i - 1])) {
      throw std::invalid_argument("defect_curve: T values must be strictly increasing");
    }
  }

  std::vector<DefectSample> out(T_values.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, T_values.size());
  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < T_values.size(); i += workers) {
      out[i] = {T_values[i], fejer_defect(mu, T_values[i])};
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(work, k);
  }
  return out;
}

}  // namespace ergorate
