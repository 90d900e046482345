#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ergorate/dos_library.hpp"
#include "ergorate/errors.hpp"
#include "ergorate/spectral_core.hpp"

namespace ergorate {

double sphere_area(int d) {
  if (d < 1) throw std::invalid_argument("sphere_area: dimension must be at least 1");
  const double half = static_cast<double>(d) / 2.0;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

SymbolFunction SymbolFunction::identity() {
  return {"identity", SymbolKind::identity, [](double x) { return x; },
          [](double l) { return l; }, [](double) { return 1.0; }};
}

SymbolFunction SymbolFunction::square_root() {
  return {"square_root", SymbolKind::square_root, [](double x) { return std::sqrt(x); },
          [](double l) { return l * l; }, [](double x) { return 0.5 / std::sqrt(x); }};
}

SymbolFunction SymbolFunction::from_name(const std::string& name) {
  if (name == "identity") return identity();
  if (name == "square_root") return square_root();
  throw std::invalid_argument("unknown symbol preset '" + name + "'");
}

Subspace subspace_from_name(const std::string& name) {
  if (name == "weighted") return Subspace::weighted;
  if (name == "l1l2") return Subspace::l1l2;
  throw std::invalid_argument("unknown subspace '" + name + "' (expected weighted or l1l2)");
}

std::string to_string(Subspace s) { return s == Subspace::weighted ? "weighted" : "l1l2"; }

double psi_weighted(const SymbolFunction& phi, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("psi_weighted: lambda must be positive");
  const double x = phi.inverse(lambda);
  return 1.0 / (2.0 * std::sqrt(x) * phi.derivative(x));
}

double psi_l1(const SymbolFunction& phi, int d, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("psi_l1: lambda must be positive");
  const double x = phi.inverse(lambda);
  return sphere_area(d) * std::pow(std::sqrt(x), d - 2) / (2.0 * phi.derivative(x));
}

PowerLawDoS::PowerLawDoS(double c_, double p_) : c(c_), p(p_) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("PowerLawDoS: c must be positive");
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("PowerLawDoS: p must be positive");
}

double PowerLawDoS::operator()(double lambda) const { return c * std::pow(std::abs(lambda), p - 1.0); }

PowerLawDoS power_law_for(const SymbolFunction& phi, Subspace subspace, int d) {
  const double area = sphere_area(d);
  const double dim = static_cast<double>(d);
  switch (phi.kind) {
    case SymbolKind::identity:
      return subspace == Subspace::weighted ? PowerLawDoS(0.5, 0.5) : PowerLawDoS(0.5 * area, dim / 2.0);
    case SymbolKind::square_root:
      return subspace == Subspace::weighted ? PowerLawDoS(1.0, 1.0) : PowerLawDoS(area, dim);
    case SymbolKind::custom:
      break;
  }
  throw std::invalid_argument("power_law_for: no closed form for symbol '" + phi.name + "'");
}

namespace {

void require_radius(double r, const char* where) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument(std::string(where) + ": r must lie in (0,1)");
}

}  // namespace

double capital_psi_powerlaw(const PowerLawDoS& dos, double q, double r) {
  if (!(q > 0.0)) throw std::invalid_argument("capital_psi_powerlaw: q must be positive");
  require_radius(r, "capital_psi_powerlaw");
  if (q >= dos.p) {
    throw IntegrabilityError("capital_psi_powerlaw: |λ|^{-q}ψ is not integrable near 0 for q >= p");
  }
  return 2.0 * dos.c * std::pow(r, dos.p - q) / (dos.p - q);
}

double capital_psi_tabulated(const TabulatedDoS& psi, double q, double r) {
  if (!(q > 0.0)) throw std::invalid_argument("capital_psi_tabulated: q must be positive");
  require_radius(r, "capital_psi_tabulated");
  SampledDensity weighted;
  for (std::size_t i = 0; i < psi.grid.size() && i < psi.values.size(); ++i) {
    const double l = psi.grid[i];
    if (std::abs(l) > r) continue;
    if (l == 0.0) continue;
    if (!(psi.values[i] > 0.0)) {
      throw std::invalid_argument("capital_psi_tabulated: ψ must be positive at sampled nodes");
    }
    weighted.grid.push_back(l);
    weighted.values.push_back(std::pow(std::abs(l), -q) * psi.values[i]);
  }
  const SpectralMeasure mu({}, std::move(weighted));
  return mu.density_mass();
}

DoSBudget::DoSBudget(double q, double r, double capital_psi)
    : q_(q), r_(r), ell_(rate_exponent(q)), capital_psi_(capital_psi) {
  require_radius(r, "DoSBudget");
  if (!(capital_psi > 0.0) || !std::isfinite(capital_psi)) {
    throw std::invalid_argument("DoSBudget: Ψ_q(r) must be positive and finite");
  }
}

DoSBudget DoSBudget::from_power_law(const PowerLawDoS& dos, double q, double r) {
  return DoSBudget(q, r, capital_psi_powerlaw(dos, q, r));
}

double rate_exponent(double q) {
  if (!(q > 0.0)) throw std::invalid_argument("rate_exponent: q must be positive");
  return std::min(q, 2.0);
}

double rate_exponent_powerlaw(double p, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < p)) {
    throw std::invalid_argument("rate_exponent_powerlaw: need 0 < epsilon < p");
  }
  return std::min(p - epsilon, 2.0);
}

double bound_constant(const DoSBudget& budget, double T) {
  if (!(T > 1.0)) throw std::invalid_argument("bound_constant: T must exceed 1");
  return budget.capital_psi() + std::pow(T, -(2.0 - budget.ell())) / (budget.r() * budget.r());
}

double predicted_defect_bound(const DoSBudget& budget, double norm_x, double T) {
  if (!(norm_x > 0.0)) throw std::invalid_argument("predicted_defect_bound: norm must be positive");
  return std::sqrt(bound_constant(budget, T)) * std::pow(T, -budget.ell() / 2.0) * norm_x;
}

double admissible_norm(const SpectralMeasure& mu, const std::function<double(double)>& psi, double r) {
  require_radius(r, "admissible_norm");
  for (const auto& a : mu.atoms()) {
    if (a.location != 0.0 && std::abs(a.location) <= r) {
      throw std::invalid_argument("admissible_norm: atom inside I_r has no DoS bound");
    }
  }
  double n2 = mu.total_mass();
  if (const auto& density = mu.density()) {
    for (std::size_t i = 0; i < density->grid.size(); ++i) {
      const double l = density->grid[i];
      if (l == 0.0 || std::abs(l) > r || density->values[i] == 0.0) continue;
      n2 = std::max(n2, density->values[i] / psi(l));
    }
  }
  return std::sqrt(n2);
}

}  // namespace ergorate
