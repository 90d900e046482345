#include <cmath>
#include <stdexcept>

#include "ergorate/errors.hpp"
#include "ergorate/pde_models.hpp"

namespace ergorate {

std::vector<double> induced_lambda_grid(const RadialField& field, const SymbolFunction& phi) {
  std::vector<double> grid;
  grid.reserve(field.radii().size());
  for (double rho : field.radii()) grid.push_back(phi.forward(rho * rho));
  return grid;
}

SpectralMeasure schrodinger_measure(const RadialField& field, const SymbolFunction& phi,
                                    std::span<const double> lambda_grid) {
  const double lambda_top = phi.forward(field.rho_max() * field.rho_max());
  const double area = sphere_area(field.dimension());
  SampledDensity density;
  density.grid.assign(lambda_grid.begin(), lambda_grid.end());
  density.values.reserve(lambda_grid.size());
  auto density_at = [&](double lambda) {
    const double x = phi.inverse(lambda);
    const double rho = std::sqrt(x);
    const double f = field.value_at(rho);
    return std::pow(rho, field.dimension() - 1) * area * f * f / (2.0 * rho * phi.derivative(x));
  };
  for (double lambda : lambda_grid) {
    if (!(lambda > 0.0) || lambda > lambda_top) {
      throw GridRangeError("schrodinger_measure: λ = " + std::to_string(lambda) +
                           " outside (0, φ(ρ_max²)]");
    }
    density.values.push_back(density_at(lambda));
  }
  // A grid ending within one spacing of φ(ρ_max²) is closed there, so the
  // outermost radial cell is not lost.
  const auto& g = density.grid;
  if (g.size() >= 2 && g.back() < lambda_top && lambda_top - g.back() <= g.back() - g[g.size() - 2]) {
    density.grid.push_back(lambda_top);
    density.values.push_back(density_at(lambda_top));
  }
  // the λ-quadrature and the radial cell rule agree to well below this on
  // any grid that resolves the profile
  return SpectralMeasure({}, std::move(density), field.l2_mass(), 1e-3);
}

double schrodinger_defect_timedomain(const RadialField& field, const SymbolFunction& phi, double T,
                                     int t_nodes) {
  if (t_nodes < 2) throw std::invalid_argument("schrodinger_defect_timedomain: t_nodes must be at least 2");
  const SymmetricTimeRule rule(T, t_nodes);
  const auto widths = field.cell_widths();
  const auto& radii = field.radii();
  const auto& values = field.values();
  double sum = 0.0;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (values[j] == 0.0) continue;
    const double omega = phi.forward(radii[j] * radii[j]);
    const double multiplier = std::norm(rule.average_phase(omega));
    sum += widths[j] * std::pow(radii[j], field.dimension() - 1) * values[j] * values[j] * multiplier;
  }
  return std::sqrt(sphere_area(field.dimension()) * sum);
}

}  // namespace ergorate
