#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ergorate/spectral_core.hpp"

namespace ergorate {

double SpectralMeasure::Piece::eval(double u) const {
  const double s = u - origin;
  return coeffs[0] + s * (coeffs[1] + s * coeffs[2]);
}

double SpectralMeasure::Piece::integral(double a, double b) const {
  auto primitive = [this](double u) {
    const double s = u - origin;
    return s * (coeffs[0] + s * (coeffs[1] / 2.0 + s * coeffs[2] / 3.0));
  };
  return primitive(b) - primitive(a);
}

SpectralMeasure::SpectralMeasure(std::vector<Atom> atoms, std::optional<SampledDensity> density,
                                 std::optional<double> total_mass, double mass_tolerance)
    : atoms_(std::move(atoms)), density_(std::move(density)) {
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.location) || !std::isfinite(a.weight)) {
      throw std::invalid_argument("SpectralMeasure: non-finite atom");
    }
    if (a.weight <= 0.0) {
      throw std::invalid_argument("SpectralMeasure: atom weights must be positive");
    }
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& l, const Atom& r) { return l.location < r.location; });
  for (std::size_t i = 1; i < atoms_.size(); ++i) {
    if (atoms_[i].location == atoms_[i - 1].location) {
      throw std::invalid_argument("SpectralMeasure: repeated atom location");
    }
  }

  if (density_) {
    const auto& grid = density_->grid;
    const auto& values = density_->values;
    if (grid.size() != values.size()) {
      throw std::invalid_argument("SpectralMeasure: density grid and values differ in length");
    }
    if (grid.size() < 2) {
      throw std::invalid_argument("SpectralMeasure: density needs at least two nodes");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!std::isfinite(grid[i]) || !std::isfinite(values[i])) {
        throw std::invalid_argument("SpectralMeasure: non-finite density sample");
      }
      if (values[i] < 0.0) {
        throw std::invalid_argument("SpectralMeasure: negative density value");
      }
      if (i > 0 && !(grid[i] > grid[i - 1])) {
        throw std::invalid_argument("SpectralMeasure: density grid must be strictly increasing");
      }
    }
    build_pieces();
  }

  double atom_mass = 0.0;
  for (const auto& a : atoms_) atom_mass += a.weight;
  const double computed = atom_mass + density_mass();

  if (total_mass) {
    if (!std::isfinite(*total_mass) || *total_mass < 0.0) {
      throw std::invalid_argument("SpectralMeasure: total mass must be finite and nonnegative");
    }
    const double scale = std::max(*total_mass, computed);
    if (std::abs(*total_mass - computed) > mass_tolerance * scale) {
      throw std::invalid_argument("SpectralMeasure: total mass " + std::to_string(*total_mass) +
                                  " disagrees with atoms plus density " +
                                  std::to_string(computed));
    }
    total_mass_ = *total_mass;
  } else {
    total_mass_ = computed;
  }
}

void SpectralMeasure::build_pieces() {
  const auto& grid = density_->grid;
  const auto& values = density_->values;

  std::vector<double> pos_u, pos_g, neg_u, neg_g;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = std::sqrt(std::abs(grid[i]));
    const double g = values[i] * 2.0 * u;
    if (grid[i] >= 0.0) {
      pos_u.push_back(u);
      pos_g.push_back(g);
    }
    if (grid[i] <= 0.0) {
      neg_u.push_back(u);
      neg_g.push_back(g);
    }
  }
  std::reverse(neg_u.begin(), neg_u.end());
  std::reverse(neg_g.begin(), neg_g.end());

  const bool straddles = grid.front() < 0.0 && grid.back() > 0.0;
  auto near_zero = [straddles](const std::vector<double>& u) {
    if (u.empty() || u.front() == 0.0) return false;
    if (straddles) return true;
    if (u.size() < 2) return false;
    const double first = u[0] * u[0];
    const double second = u[1] * u[1];
    return first <= (second - first) * (1.0 + 1e-12);
  };

  const bool fill_pos = near_zero(pos_u);
  const bool fill_neg = near_zero(neg_u);
  build_side(std::move(pos_u), std::move(pos_g), fill_pos);
  build_side(std::move(neg_u), std::move(neg_g), fill_neg);
}

void SpectralMeasure::build_side(std::vector<double> u, std::vector<double> g, bool fill_to_zero) {
  const std::size_t n = u.size();
  if (n == 0) return;
  if (n == 1) {
    if (fill_to_zero) pieces_.push_back(Piece{0.0, u[0], 0.0, {g[0], 0.0, 0.0}});
    return;
  }
  if (n == 2) {
    const double slope = (g[1] - g[0]) / (u[1] - u[0]);
    pieces_.push_back(Piece{fill_to_zero ? 0.0 : u[0], u[1], u[0], {g[0], slope, 0.0}});
    return;
  }

  auto quadratic = [&](std::size_t a, double lo, double hi) {
    const double h1 = u[a + 1] - u[a];
    const double d1 = (g[a + 1] - g[a]) / h1;
    const double d12 = (g[a + 2] - g[a + 1]) / (u[a + 2] - u[a + 1]);
    const double d2 = (d12 - d1) / (u[a + 2] - u[a]);
    return Piece{lo, hi, u[a], {g[a], d1 - d2 * h1, d2}};
  };

  std::size_t k = 0;
  for (; k + 2 < n; k += 2) {
    const double lo = (k == 0 && fill_to_zero) ? 0.0 : u[k];
    pieces_.push_back(quadratic(k, lo, u[k + 2]));
  }
  if (k + 1 < n) {
    // odd number of intervals: close with the quadratic through the last three nodes
    pieces_.push_back(quadratic(n - 3, u[n - 2], u[n - 1]));
  }
}

double SpectralMeasure::kernel_weight() const {
  for (const auto& a : atoms_) {
    if (a.location == 0.0) return a.weight;
  }
  return 0.0;
}

double SpectralMeasure::density_mass() const {
  double sum = 0.0;
  for (const auto& p : pieces_) sum += p.integral(p.lo, p.hi);
  return sum;
}

double SpectralMeasure::window_mass(double radius) const {
  if (!(radius > 0.0)) return 0.0;
  double sum = 0.0;
  for (const auto& a : atoms_) {
    if (a.location != 0.0 && std::abs(a.location) < radius) sum += a.weight;
  }
  const double ur = std::sqrt(radius);
  for (const auto& p : pieces_) {
    if (p.lo >= ur) continue;
    sum += p.integral(p.lo, std::min(p.hi, ur));
  }
  return sum;
}

double SpectralMeasure::fejer_density_integral(double T) const {
  double total = 0.0;
  for (const auto& p : pieces_) {
    const double width = p.hi - p.lo;
    if (width <= 0.0) continue;
    // λ-spacing of the sub-nodes ≤ 2·hi·Δu ≤ π/(8T)
    auto m = static_cast<long>(std::ceil(16.0 * T * p.hi * width / std::numbers::pi));
    m = std::max(2L, m + (m & 1L));
    const double h = width / static_cast<double>(m);
    auto f = [&](double u) {
      const double s = sinc(T * u * u);
      return p.eval(u) * s * s;
    };
    double odd = 0.0;
    double even = 0.0;
    for (long j = 1; j < m; ++j) {
      const double v = f(p.lo + static_cast<double>(j) * h);
      if (j & 1L) {
        odd += v;
      } else {
        even += v;
      }
    }
    total += h / 3.0 * (f(p.lo) + 4.0 * odd + 2.0 * even + f(p.hi));
  }
  return total;
}

double SpectralMeasure::fejer_atom_sum(double T) const {
  double sum = 0.0;
  for (const auto& a : atoms_) {
    if (a.location == 0.0) continue;
    const double s = sinc(T * a.location);
    sum += a.weight * s * s;
  }
  return sum;
}

HermitianModel::HermitianModel(std::vector<double> eigenvalues,
                               std::vector<std::complex<double>> coefficients)
    : eigenvalues_(std::move(eigenvalues)), coefficients_(std::move(coefficients)) {
  if (eigenvalues_.empty()) {
    throw std::invalid_argument("HermitianModel: dimension must be at least 1");
  }
  if (eigenvalues_.size() != coefficients_.size()) {
    throw std::invalid_argument("HermitianModel: eigenvalue/coefficient count mismatch");
  }
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    if (!std::isfinite(eigenvalues_[i]) || !std::isfinite(coefficients_[i].real()) ||
        !std::isfinite(coefficients_[i].imag())) {
      throw std::invalid_argument("HermitianModel: non-finite entry");
    }
  }
}

double HermitianModel::norm_squared() const {
  double sum = 0.0;
  for (const auto& c : coefficients_) sum += std::norm(c);
  return sum;
}

SpectralMeasure HermitianModel::measure() const {
  std::map<double, double> merged;
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    const double w = std::norm(coefficients_[i]);
    if (w > 0.0) merged[eigenvalues_[i]] += w;
  }
  std::vector<Atom> atoms;
  atoms.reserve(merged.size());
  for (const auto& [location, weight] : merged) atoms.push_back({location, weight});
  return SpectralMeasure(std::move(atoms));
}

}  // namespace ergorate
