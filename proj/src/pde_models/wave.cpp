#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ergorate/errors.hpp"
#include "ergorate/pde_models.hpp"

namespace ergorate {

namespace {

// Local exponent of ĝ0(ρ)² ρ^{d-3} between the two innermost radii; the
// integral ∫_0 (ĝ0/ρ)² ρ^{d-1} dρ diverges when it is ≤ -1.
void check_low_frequency(const RadialField& velocity) {
  const auto& radii = velocity.radii();
  const auto& g = velocity.values();
  if (radii.size() < 2) return;
  const int d = velocity.dimension();
  const double h0 = g[0] * g[0] * std::pow(radii[0], d - 3);
  const double h1 = g[1] * g[1] * std::pow(radii[1], d - 3);
  if (h0 == 0.0 || h1 == 0.0) return;
  const double exponent = std::log(h1 / h0) / std::log(radii[1] / radii[0]);
  if (exponent <= -0.95) {
    throw LowFrequencyDivergence("wave_split: H^{-1/2} g0 is not in L² (local exponent " +
                                 std::to_string(exponent) + " near ρ = 0)");
  }
}

std::complex<double> interpolate(const std::vector<double>& radii,
                                 const std::vector<std::complex<double>>& values, double rho) {
  if (rho <= radii.front()) return values.front();
  if (rho >= radii.back()) return values.back();
  const auto it = std::upper_bound(radii.begin(), radii.end(), rho);
  const auto j = static_cast<std::size_t>(it - radii.begin());
  const double t = (rho - radii[j - 1]) / (radii[j] - radii[j - 1]);
  return values[j - 1] + t * (values[j] - values[j - 1]);
}

// Appends ρ_max when the grid ends within one spacing of it, so the
// outermost radial cell is kept.
void close_at_top(std::vector<double>& grid, double top) {
  const std::size_t n = grid.size();
  if (n >= 2 && grid[n - 1] < top && top - grid[n - 1] <= grid[n - 1] - grid[n - 2]) grid.push_back(top);
}

}  // namespace

WaveSystemField wave_split(const WaveInitialData& data) {
  const auto& f0 = data.position;
  const auto& g0 = data.velocity;
  if (f0.dimension() != g0.dimension() || f0.rho_max() != g0.rho_max() || f0.radii() != g0.radii()) {
    throw std::invalid_argument("wave_split: position and velocity must share dimension and grid");
  }
  check_low_frequency(g0);

  WaveSystemField system;
  system.dimension = f0.dimension();
  system.rho_max = f0.rho_max();
  system.radii = f0.radii();
  system.plus.reserve(system.radii.size());
  system.minus.reserve(system.radii.size());
  for (std::size_t j = 0; j < system.radii.size(); ++j) {
    const double sqrt_h_f = system.radii[j] * f0.values()[j];
    const double g = g0.values()[j];
    system.plus.emplace_back(0.5 * sqrt_h_f, 0.5 * g);
    system.minus.emplace_back(0.5 * sqrt_h_f, -0.5 * g);
  }
  return system;
}

std::vector<std::complex<double>> reconstruct_position(const WaveSystemField& system) {
  std::vector<std::complex<double>> f(system.radii.size());
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = (system.plus[j] + system.minus[j]) / system.radii[j];
  return f;
}

SpectralMeasure wave_measure(const WaveSystemField& system, std::span<const double> lambda_grid) {
  if (lambda_grid.empty()) throw std::invalid_argument("wave_measure: empty λ-grid");
  const double area = sphere_area(system.dimension);
  const int d = system.dimension;
  for (double lambda : lambda_grid) {
    if (!(lambda > 0.0) || lambda > system.rho_max) {
      throw GridRangeError("wave_measure: λ = " + std::to_string(lambda) + " outside (0, ρ_max]");
    }
  }
  // φ(x) = √x turns the coarea factor 1/(2ρ φ'(ρ²)) into 1, and λ = ρ
  auto density_of = [&](const std::vector<std::complex<double>>& component, double lambda) {
    return area * std::pow(lambda, d - 1) * std::norm(interpolate(system.radii, component, lambda));
  };

  std::vector<double> nodes(lambda_grid.begin(), lambda_grid.end());
  close_at_top(nodes, system.rho_max);

  SampledDensity density;
  const std::size_t n = nodes.size();
  density.grid.reserve(2 * n);
  density.values.reserve(2 * n);
  for (std::size_t k = n; k-- > 0;) {
    density.grid.push_back(-nodes[k]);
    density.values.push_back(density_of(system.minus, nodes[k]));
  }
  for (std::size_t k = 0; k < n; ++k) {
    density.grid.push_back(nodes[k]);
    density.values.push_back(density_of(system.plus, nodes[k]));
  }
  return SpectralMeasure({}, std::move(density));
}

SpectralMeasure wave_average_measure(const WaveSystemField& system) {
  const double area = sphere_area(system.dimension);
  const auto position = reconstruct_position(system);
  SampledDensity density;
  density.grid = system.radii;
  close_at_top(density.grid, system.rho_max);
  density.values.reserve(density.grid.size());
  for (std::size_t j = 0; j < density.grid.size(); ++j) {
    const auto f = position[std::min(j, position.size() - 1)];
    density.values.push_back(area * std::pow(density.grid[j], system.dimension - 1) * std::norm(f));
  }
  return SpectralMeasure({}, std::move(density));
}

double wave_average_defect(const WaveInitialData& data, double T) {
  return fejer_defect(wave_average_measure(wave_split(data)), T);
}

}  // namespace ergorate
