#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ergorate/rate_lab.hpp"
#include "ergorate/spectral_core.hpp"

namespace ergorate {

/// One experiment, read from a flat "key = value" file.  See README.md for
/// the key list; unknown keys are rejected.
struct ExperimentConfig {
  std::string model;  // matrix, measure, schrodinger or wave
  int dimension = 1;
  std::string symbol = "identity";
  std::string subspace = "l1l2";

  std::string data_preset = "bump";
  std::string data_file;
  std::string velocity_preset = "zero";
  double rho_max = 8.0;
  std::size_t nodes = std::size_t{1} << 15;

  double t_min = 10.0;
  double t_max = 1e4;
  int t_per_decade = 16;

  double epsilon = 0.01;
  double r = 0.5;
  std::optional<double> p;  // power law of a measure-file model
  std::optional<double> c;
  std::optional<double> norm_x;

  std::size_t matrix_dimension = 16;
  double gap = 1.0;
  std::uint64_t seed = 1;
  double spectrum_radius = 5.0;

  std::string measure_file;

  FitMode fit_mode = FitMode::envelope;
  double slope_tolerance = 0.05;

  bool dk_enabled = false;
  std::optional<double> dk_p;

  std::string output_dir;
};

/// Throws std::invalid_argument naming `source` and the offending line.
ExperimentConfig parse_config(std::istream& in, const std::string& source);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Every key with its effective value, one "key = value" line each, in a
/// fixed order; parse_config reads it back to the same config.
std::string echo_config(const ExperimentConfig& config);

/// The power-law prediction attached to a run.
struct TheoryPrediction {
  std::string psi;            // human-readable ψ
  double c = 0.0;
  double p = 0.0;
  double q = 0.0;
  double ell = 0.0;           // predicted decay is T^{-ℓ/2}
  double capital_psi = 0.0;
  double constant = 0.0;      // sqrt(Ψ_q(r) + r^{-2}), valid for all T > 1
};

struct ResultBundle {
  ExperimentConfig config;
  std::vector<DefectSample> curve;
  RateFit fit;
  TheoryPrediction theory;
  double norm_x = 0.0;
  std::vector<double> bound;  // predicted bound at each curve point
  std::optional<DKReport> dk;
  std::vector<std::pair<std::string, bool>> flags;

  bool passed() const;
};

/// Runs the pipeline named by config.model.  Errors from the numerical
/// modules are rethrown as std::runtime_error prefixed with the config key
/// that fed the failing step.
ResultBundle run_experiment(const ExperimentConfig& config);

/// Output root: $ERGORATE_OUTPUT_ROOT when set and non-empty, else "results".
std::filesystem::path output_root();

/// Writes config.txt, curve.csv, bundle.txt and summary.txt into dir.
void write_bundle(const std::filesystem::path& dir, const ResultBundle& bundle);

/// The key/value pairs of a bundle.txt (a directory is resolved to its
/// bundle.txt).
std::map<std::string, std::string> read_bundle(const std::filesystem::path& path);

/// CSV table "model,d,subspace,psi,p,ell_half,slope,C,passed", one row per
/// bundle.
void write_comparison(std::ostream& out, const std::vector<std::map<std::string, std::string>>& bundles);

}  // namespace ergorate
