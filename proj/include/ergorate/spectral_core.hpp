#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace ergorate {

/// sin(x)/x, with the removable singularity at 0 filled in.
///
/// Below |x| = 1e-4 the value comes from 1 - x^2/6 + x^4/120, whose
/// truncation error there is below one ulp of 1.
double sinc(double x);

/// Point mass of the spectral measure λ ↦ (E(λ)f, f).
struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

/// Absolutely continuous part of a spectral measure, sampled on a strictly
/// increasing λ-grid.
struct SampledDensity {
  std::vector<double> grid;
  std::vector<double> values;
};

/// Scalar spectral measure of a fixed vector f: finitely many atoms plus an
/// optional sampled density.  The total mass is ‖f‖².
///
/// The density is integrated in the variable u = sign(λ)·sqrt|λ|, where the
/// power-law singularities |λ|^{p-1} that appear near λ = 0 become mild.
/// Between grid nodes the integrand density(λ)·dλ/du is replaced by its local
/// quadratic interpolant (the same one composite Simpson uses).  When the grid
/// reaches to within one spacing of λ = 0 (or straddles it) the interpolant is
/// extended down to 0, so midpoint-type grids do not lose the innermost cell.
class SpectralMeasure {
 public:
  SpectralMeasure() = default;

  /// Throws std::invalid_argument on non-positive or non-finite weights,
  /// repeated atom locations, negative density values, a non-increasing grid,
  /// or a supplied total mass that disagrees with the computed one by more
  /// than mass_tolerance (relative).
  explicit SpectralMeasure(std::vector<Atom> atoms,
                           std::optional<SampledDensity> density = std::nullopt,
                           std::optional<double> total_mass = std::nullopt,
                           double mass_tolerance = 1e-6);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<SampledDensity>& density() const { return density_; }
  double total_mass() const { return total_mass_; }

  /// Weight of the atom at λ = 0 (zero if there is none).
  double kernel_weight() const;

  /// Quadrature of the density over its whole support.
  double density_mass() const;

  /// μ((-radius, radius) \ {0}).
  double window_mass(double radius) const;

  /// ∫ sinc²(Tλ) density(λ) dλ, with the λ-spacing of the evaluation nodes
  /// kept below π/(8T).
  double fejer_density_integral(double T) const;

  /// Σ_{λ_j ≠ 0} w_j sinc²(Tλ_j).
  double fejer_atom_sum(double T) const;

 private:
  // Quadratic in u over [lo, hi] (u = |λ|^{1/2} on one side of zero),
  // stored in Newton form around the interpolation nodes.
  struct Piece {
    double lo = 0.0;
    double hi = 0.0;
    double origin = 0.0;
    std::array<double, 3> coeffs{};  // q(u) = c0 + c1 s + c2 s², s = u - origin
    double eval(double u) const;
    double integral(double a, double b) const;
  };

  void build_pieces();
  void build_side(std::vector<double> u, std::vector<double> g, bool fill_to_zero);

  std::vector<Atom> atoms_;
  std::optional<SampledDensity> density_;
  double total_mass_ = 0.0;
  std::vector<Piece> pieces_;
};

/// Finite-dimensional self-adjoint H given in its eigenbasis, together with
/// the coordinates of f in that basis.
class HermitianModel {
 public:
  HermitianModel(std::vector<double> eigenvalues,
                 std::vector<std::complex<double>> coefficients);

  std::size_t dimension() const { return eigenvalues_.size(); }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const std::vector<std::complex<double>>& coefficients() const { return coefficients_; }
  double norm_squared() const;

  /// Atoms at the eigenvalues with weights |c_j|²; repeated eigenvalues merge.
  SpectralMeasure measure() const;

 private:
  std::vector<double> eigenvalues_;
  std::vector<std::complex<double>> coefficients_;
};

struct DefectSample {
  double T = 0.0;
  double defect = 0.0;
};

/// ‖Pf‖ = sqrt(μ({0})).
double kernel_projection_norm(const SpectralMeasure& mu);

/// ‖(P^T - P) f‖ = sqrt(∫_{ℝ\{0}} sinc²(Tλ) dμ(λ)).
double fejer_defect(const SpectralMeasure& mu, double T);

/// ‖(P^T - P) f‖ for a pure-point model, summed directly over eigenvalues.
double time_average_exact(const HermitianModel& model, double T);

/// ‖(P^T - P) f‖ with P^T f formed by quadrature of e^{itλ_j} c_j over
/// t ∈ [-T, T].  Uses composite Gauss-Legendre panels (16 nodes each, or
/// `nodes` when fewer) laid out symmetrically about t = 0.
double time_domain_defect(const HermitianModel& model, double T, int nodes);

/// fejer_defect over a strictly increasing list of T values, in input order.
std::vector<DefectSample> defect_curve(const SpectralMeasure& mu, std::span<const double> T_values);

/// Plain-text record with sections "total_mass", "atoms" and "density";
/// every number is written with 17 significant digits.
void write_measure(std::ostream& out, const SpectralMeasure& mu);
SpectralMeasure read_measure(std::istream& in);

/// Symmetric composite Gauss-Legendre rule for (1/2T) ∫_{-T}^{T} g(t) dt.
/// Only t ≥ 0 is stored; the t < 0 half is its mirror image.
class SymmetricTimeRule {
 public:
  SymmetricTimeRule(double T, int nodes);

  /// (1/2T) ∫ e^{iωt} dt.  The nodes are mirrored, so the imaginary part
  /// vanishes identically.
  std::complex<double> average_phase(double omega) const;

  std::size_t node_count() const { return total_nodes_; }

 private:
  std::vector<double> t_;
  std::vector<double> w_;
  double w_zero_ = 0.0;
  double half_span_ = 0.0;
  std::size_t total_nodes_ = 0;
};

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int order);

}  // namespace ergorate
