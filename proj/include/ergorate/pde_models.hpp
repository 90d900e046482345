#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ergorate/dos_library.hpp"
#include "ergorate/spectral_core.hpp"

namespace ergorate {

/// Radially symmetric Fourier data: ρ ↦ |f̂(ρ)| sampled on radii in (0, ρ_max].
///
/// The default grid is the midpoint grid ρ_j = (j + 1/2) ρ_max / n, which never
/// touches ρ = 0.  Radial integrals use cells bounded by 0, the midpoints
/// between neighbouring radii and ρ_max; on the default grid this is the
/// midpoint rule.
class RadialField {
 public:
  RadialField(int dimension, double rho_max, std::vector<double> radii, std::vector<double> values);

  static RadialField sample(int dimension, double rho_max, std::size_t n,
                            const std::function<double(double)>& profile);

  int dimension() const { return dimension_; }
  double rho_max() const { return rho_max_; }
  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& values() const { return values_; }

  /// Linear interpolation; constant below the first radius, zero past ρ_max.
  double value_at(double rho) const;

  /// Radial cell widths used for every ∫ ... ρ^{d-1} dρ on this grid.
  std::vector<double> cell_widths() const;

  /// ∫ |f̂(ρ)|² |S^{d-1}| ρ^{d-1} dρ = ‖f‖²_{L²}.
  double l2_mass() const;

 private:
  int dimension_;
  double rho_max_;
  std::vector<double> radii_;
  std::vector<double> values_;
};

/// Header line "d ρ_max n", then n lines "ρ value", 17 significant digits.
void write_radial_field(std::ostream& out, const RadialField& field);
RadialField read_radial_field(std::istream& in);

/// Named radial profiles used by the experiment presets.
namespace profiles {

/// C^∞, equal to 1 on [0, 1/2], 0 from ρ = 1 on.
double flat_top_bump(double rho);
double gaussian(double rho);  // e^{-ρ²/2}
double box(double rho);       // 1 on [0, 1]

}  // namespace profiles

/// Preset fields: "bump", "gaussian", "box", and "singular" (the bump times
/// ρ^{-(d-1)/2}, whose Schrödinger/wave densities saturate the L^{2,s} ψ).
RadialField make_preset_field(const std::string& preset, int dimension, double rho_max, std::size_t n);

/// λ_j = φ(ρ_j²) over the field's radii.
std::vector<double> induced_lambda_grid(const RadialField& field, const SymbolFunction& phi);

/// Spectral measure of f under H = φ(-Δ), by the coarea formula:
///   density(λ) = ρ^{d-1} |S^{d-1}| |f̂(ρ)|² / (2ρ φ'(ρ²)),  ρ = sqrt(φ^{-1}(λ)).
/// No atoms; total mass is the field's L² mass.  Throws GridRangeError when a
/// λ lies outside (0, φ(ρ_max²)).
SpectralMeasure schrodinger_measure(const RadialField& field, const SymbolFunction& phi,
                                    std::span<const double> lambda_grid);

/// ‖(1/2T) ∫_{-T}^{T} e^{itφ(ρ²)} f̂ dt‖_{L²} with the t-integral done by
/// quadrature at every radius.
double schrodinger_defect_timedomain(const RadialField& field, const SymbolFunction& phi, double T,
                                     int t_nodes);

struct WaveInitialData {
  RadialField position;  // f0
  RadialField velocity;  // g0
};

/// f_± = ½(ρ f̂0 ± i ĝ0) on the shared radial grid.
struct WaveSystemField {
  int dimension = 0;
  double rho_max = 0.0;
  std::vector<double> radii;
  std::vector<std::complex<double>> plus;
  std::vector<std::complex<double>> minus;
};

/// Throws LowFrequencyDivergence when ĝ0/ρ is not square integrable near 0,
/// and std::invalid_argument when the two fields do not share a grid.
WaveSystemField wave_split(const WaveInitialData& data);

/// H^{-1/2}(f_+ + f_-) at t = 0; recovers f̂0.
std::vector<std::complex<double>> reconstruct_position(const WaveSystemField& system);

/// Spectral measure of F = (f_+, f_-) under K = diag(√H, -√H): the plus part
/// on λ > 0 and the minus part mirrored onto λ < 0.  lambda_grid lists the
/// positive λ values, inside (0, ρ_max).
SpectralMeasure wave_measure(const WaveSystemField& system, std::span<const double> lambda_grid);

/// Spectral measure (in the √H variable) of H^{-1/2}(f_+ + f_-), the
/// reconstructed position; its Fejér integral is the squared wave defect.
SpectralMeasure wave_average_measure(const WaveSystemField& system);

/// ‖P^T(f0, g0)‖_{L²}, the L² norm of the time-averaged wave solution.
double wave_average_defect(const WaveInitialData& data, double T);

/// Result of an L^q_T norm evaluation; `diverges` when the fitted tail is not
/// q-integrable.
struct LqNorm {
  bool diverges = false;
  double value = 0.0;
};

/// (∫_{T_min}^{∞} defect(T)^q dT)^{1/q}: trapezoid in log T over the samples,
/// plus the power-law tail fitted to the upper envelope of the curve.
LqNorm global_lq_norm(std::span<const DefectSample> curve, double q, double T_min);

}  // namespace ergorate
