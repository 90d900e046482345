#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ergorate/spectral_core.hpp"

namespace ergorate {

/// |S^{d-1}| = 2π^{d/2} / Γ(d/2).
double sphere_area(int d);

enum class SymbolKind { identity, square_root, custom };

/// A strictly increasing φ: [0,∞) → [0,∞) with its inverse and derivative,
/// defining H = φ(-Δ).  The triple is supplied together so that ψ never needs
/// a numerical inversion of φ.
struct SymbolFunction {
  std::string name;
  SymbolKind kind = SymbolKind::custom;
  std::function<double(double)> forward;
  std::function<double(double)> inverse;
  std::function<double(double)> derivative;

  static SymbolFunction identity();     // Schrödinger: H = -Δ
  static SymbolFunction square_root();  // half-wave: H = (-Δ)^{1/2}
  static SymbolFunction from_name(const std::string& name);
};

/// Which subspace X the DoS bound is taken on.
enum class Subspace { weighted, l1l2 };

Subspace subspace_from_name(const std::string& name);
std::string to_string(Subspace s);

/// ψ for X = L^{2,s}: 1 / (2 sqrt(φ^{-1}(λ)) φ'(φ^{-1}(λ))).
double psi_weighted(const SymbolFunction& phi, double lambda);

/// ψ for X = L¹ ∩ L²: |S^{d-1}| sqrt(φ^{-1}(λ))^{d-2} / (2 φ'(φ^{-1}(λ))).
double psi_l1(const SymbolFunction& phi, int d, double lambda);

/// ψ(λ) = c |λ|^{p-1}.
struct PowerLawDoS {
  double c;
  double p;

  PowerLawDoS(double c, double p);
  double operator()(double lambda) const;
};

/// (c, p) of the power-law ψ for one of the preset symbols on subspace X in
/// dimension d.  Throws std::invalid_argument for custom symbols.
PowerLawDoS power_law_for(const SymbolFunction& phi, Subspace subspace, int d);

/// Ψ_q(r) = ∫_{-r}^{r} |λ|^{-q} c|λ|^{p-1} dλ = 2c r^{p-q} / (p - q).
/// Throws IntegrabilityError when q ≥ p.
double capital_psi_powerlaw(const PowerLawDoS& dos, double q, double r);

/// ψ sampled on a grid inside [-r, r].
struct TabulatedDoS {
  std::vector<double> grid;
  std::vector<double> values;
};

/// Ψ_q(r) for a tabulated ψ, by quadrature in u = sqrt|λ|.  Only sampled
/// nodes are checked for positivity.
double capital_psi_tabulated(const TabulatedDoS& psi, double q, double r);

/// q, r, ℓ = min{q, 2} and Ψ_q(r): everything the rate bound depends on.
class DoSBudget {
 public:
  DoSBudget(double q, double r, double capital_psi);
  static DoSBudget from_power_law(const PowerLawDoS& dos, double q, double r);

  double q() const { return q_; }
  double r() const { return r_; }
  double ell() const { return ell_; }
  double capital_psi() const { return capital_psi_; }

 private:
  double q_;
  double r_;
  double ell_;
  double capital_psi_;
};

/// ℓ = min{q, 2}; the defect decays like T^{-ℓ/2}.
double rate_exponent(double q);

/// ℓ = min{p - ε, 2} for ψ = c|λ|^{p-1}.
double rate_exponent_powerlaw(double p, double epsilon = 0.01);

/// Ψ_q(r) + T^{-(2-ℓ)} r^{-2}, for T > 1.
double bound_constant(const DoSBudget& budget, double T);

/// sqrt(bound_constant) · T^{-ℓ/2} · ‖f‖_X.
double predicted_defect_bound(const DoSBudget& budget, double norm_x, double T);

/// Smallest N with density(λ) ≤ ψ(λ) N² at every sampled node 0 < |λ| ≤ r and
/// N ≥ ‖f‖_H.  This is the least value of ‖f‖_X consistent with the DoS bound
/// on the sampled measure.  Atoms inside I_r \ {0} admit no such N and are
/// rejected with std::invalid_argument.
double admissible_norm(const SpectralMeasure& mu, const std::function<double(double)>& psi, double r);

}  // namespace ergorate
