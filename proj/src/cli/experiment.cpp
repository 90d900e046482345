#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

#include "ergorate/cli.hpp"
#include "ergorate/dos_library.hpp"
#include "ergorate/pde_models.hpp"

namespace ergorate {

namespace {

template <class F>
auto stage(const std::string& key, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw std::runtime_error(key + ": " + e.what());
  }
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// A unit vector f with one kernel component and the rest of the spectrum in
// gap ≤ |λ| ≤ radius; the eigenvalue γ itself is always present.
HermitianModel random_gap_model(const ExperimentConfig& c) {
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> magnitude(c.gap, c.spectrum_radius);
  std::bernoulli_distribution negative(0.5);
  std::normal_distribution<double> normal;

  std::vector<double> eigenvalues(c.matrix_dimension);
  std::vector<std::complex<double>> coefficients(c.matrix_dimension);
  double norm2 = 0.0;
  for (std::size_t j = 0; j < c.matrix_dimension; ++j) {
    if (j == 0) eigenvalues[j] = 0.0;
    else if (j == 1) eigenvalues[j] = c.gap;
    else eigenvalues[j] = negative(rng) ? -magnitude(rng) : magnitude(rng);
    coefficients[j] = {normal(rng), normal(rng)};
    norm2 += std::norm(coefficients[j]);
  }
  for (auto& z : coefficients) z /= std::sqrt(norm2);
  return HermitianModel(std::move(eigenvalues), std::move(coefficients));
}

RadialField load_field(const ExperimentConfig& c) {
  if (!c.data_file.empty()) {
    return stage("data.file", [&] {
      std::ifstream in(c.data_file);
      if (!in) throw std::invalid_argument("cannot open " + c.data_file);
      return read_radial_field(in);
    });
  }
  return stage("data.preset", [&] { return make_preset_field(c.data_preset, c.dimension, c.rho_max, c.nodes); });
}

RadialField velocity_on_grid(const ExperimentConfig& c, const RadialField& position) {
  return stage("data.velocity_preset", [&] {
    std::vector<double> values(position.radii().size(), 0.0);
    if (c.velocity_preset != "zero") {
      const auto preset = make_preset_field(c.velocity_preset, position.dimension(), position.rho_max(), c.nodes);
      for (std::size_t i = 0; i < values.size(); ++i) values[i] = preset.value_at(position.radii()[i]);
    }
    return RadialField(position.dimension(), position.rho_max(), position.radii(), std::move(values));
  });
}

TheoryPrediction power_law_theory(const PowerLawDoS& dos, const ExperimentConfig& c) {
  return stage("params", [&] {
    TheoryPrediction t;
    t.psi = short_number(dos.c) + "*|lambda|^" + short_number(dos.p - 1.0);
    t.c = dos.c;
    t.p = dos.p;
    t.q = dos.p - c.epsilon;
    t.ell = rate_exponent_powerlaw(dos.p, c.epsilon);
    t.capital_psi = capital_psi_powerlaw(dos, t.q, c.r);
    t.constant = std::sqrt(t.capital_psi + 1.0 / (c.r * c.r));
    return t;
  });
}

}  // namespace

bool ResultBundle::passed() const {
  for (const auto& [name, ok] : flags) {
    if (!ok) return false;
  }
  return true;
}

ResultBundle run_experiment(const ExperimentConfig& config) {
  ResultBundle b;
  b.config = config;
  const auto Ts = stage("time", [&] { return geometric_grid(config.t_min, config.t_max, config.t_per_decade); });
  const double nan = std::numeric_limits<double>::quiet_NaN();

  SpectralMeasure mu;
  std::optional<PowerLawDoS> dos;
  if (config.model == "matrix") {
    const auto model = random_gap_model(config);
    mu = model.measure();
  } else if (config.model == "measure") {
    mu = stage("measure.file", [&] {
      std::ifstream in(config.measure_file);
      if (!in) throw std::invalid_argument("cannot open " + config.measure_file);
      return read_measure(in);
    });
    if (config.p) dos = stage("params.p", [&] { return PowerLawDoS(*config.c, *config.p); });
  } else if (config.model == "schrodinger") {
    const auto field = load_field(config);
    const auto phi = stage("symbol", [&] { return SymbolFunction::from_name(config.symbol); });
    mu = stage("data", [&] { return schrodinger_measure(field, phi, induced_lambda_grid(field, phi)); });
    dos = stage("subspace", [&] { return power_law_for(phi, subspace_from_name(config.subspace), field.dimension()); });
  } else {
    const auto position = load_field(config);
    const auto velocity = velocity_on_grid(config, position);
    mu = stage("data", [&] { return wave_average_measure(wave_split({position, velocity})); });
    dos = stage("subspace", [&] {
      return power_law_for(SymbolFunction::square_root(), subspace_from_name(config.subspace), position.dimension());
    });
  }

  b.curve = defect_curve(mu, Ts);
  b.fit = stage("fit", [&] { return loglog_fit(b.curve, config.fit_mode); });
  b.bound.assign(b.curve.size(), nan);

  if (config.model == "matrix") {
    b.theory.psi = "0 on (-gap,gap)";
    b.theory.p = 2.0;
    b.theory.q = 2.0;
    b.theory.ell = 2.0;
    b.theory.constant = 1.0 / config.gap;
    b.norm_x = std::sqrt(mu.total_mass());
    bool within = true;
    for (std::size_t i = 0; i < b.curve.size(); ++i) {
      b.bound[i] = b.norm_x / (config.gap * b.curve[i].T);
      within = within && b.curve[i].defect <= b.bound[i] * (1.0 + 1e-12);
    }
    b.flags.emplace_back("gap_bound", within);
    b.flags.emplace_back("slope_matches_theory", std::abs(b.fit.slope + 1.0) <= config.slope_tolerance);
  } else if (dos) {
    b.theory = power_law_theory(*dos, config);
    const auto budget = stage("params", [&] { return DoSBudget::from_power_law(*dos, b.theory.q, config.r); });
    b.norm_x = config.norm_x ? *config.norm_x
                             : stage("params.norm_x", [&] { return admissible_norm(mu, *dos, config.r); });
    bool within = true;
    for (std::size_t i = 0; i < b.curve.size(); ++i) {
      if (!(b.curve[i].T > 1.0)) continue;
      b.bound[i] = predicted_defect_bound(budget, b.norm_x, b.curve[i].T);
      within = within && b.curve[i].defect <= b.bound[i];
    }
    b.flags.emplace_back("bound_respected", within);
    const double target = -std::min(b.theory.p, 2.0) / 2.0;
    b.flags.emplace_back("slope_matches_theory", std::abs(b.fit.slope - target) <= config.slope_tolerance);
  } else {
    b.norm_x = std::sqrt(mu.total_mass());
  }

  if (config.dk_enabled) {
    double p = 0.0;
    if (config.dk_p) p = *config.dk_p;
    else if (dos && b.theory.q < 2.0) p = b.theory.q;
    else throw std::runtime_error("dk.p: required when the model has no power law with p - epsilon < 2");
    DKGrids grids;
    grids.r = config.r;
    grids.t_min = config.t_min;
    grids.t_max = config.t_max;
    grids.t_per_decade = config.t_per_decade;
    b.dk = stage("dk", [&] { return dk_equivalence_report(mu, p, grids); });
    b.flags.emplace_back("dk_consistent", b.dk->consistent());
  }
  return b;
}

std::filesystem::path output_root() {
  const char* env = std::getenv("ERGORATE_OUTPUT_ROOT");
  if (env != nullptr && *env != '\0') return env;
  return "results";
}

void write_bundle(const std::filesystem::path& dir, const ResultBundle& b) {
  std::filesystem::create_directories(dir);
  auto open = [&dir](const char* name) {
    std::ofstream out(dir / name);
    if (!out) throw std::runtime_error("write_bundle: cannot write " + (dir / name).string());
    return out;
  };

  {
    auto out = open("config.txt");
    out << echo_config(b.config);
  }

  {
    const double ell = b.theory.ell;
    std::vector<ReportRow> rows;
    rows.reserve(b.curve.size());
    for (std::size_t i = 0; i < b.curve.size(); ++i) {
      const auto& s = b.curve[i];
      rows.push_back({s.T, s.defect, b.bound[i], std::pow(s.T, ell / 2.0) * s.defect});
    }
    auto out = open("curve.csv");
    write_rate_report(out, rows, b.fit);
  }

  {
    auto out = open("bundle.txt");
    auto kv = [&out](const std::string& k, const std::string& v) { out << k << " = " << v << '\n'; };
    kv("model", b.config.model);
    kv("dimension", std::to_string(b.config.dimension));
    kv("subspace", b.config.model == "matrix" ? "-" : b.config.subspace);
    kv("theory.psi", b.theory.psi.empty() ? "-" : b.theory.psi);
    kv("theory.c", format_number(b.theory.c));
    kv("theory.p", format_number(b.theory.p));
    kv("theory.q", format_number(b.theory.q));
    kv("theory.ell", format_number(b.theory.ell));
    kv("theory.ell_half", format_number(b.theory.ell / 2.0));
    kv("theory.capital_psi", format_number(b.theory.capital_psi));
    kv("theory.constant", format_number(b.theory.constant));
    kv("norm_x", format_number(b.norm_x));
    kv("fit.slope", format_number(b.fit.slope));
    kv("fit.intercept", format_number(b.fit.intercept));
    kv("fit.r_squared", format_number(b.fit.r_squared));
    kv("fit.t_min", format_number(b.fit.t_min));
    kv("fit.t_max", format_number(b.fit.t_max));
    kv("fit.samples", std::to_string(b.fit.samples));
    if (b.dk) {
      kv("dk.p", format_number(b.dk->p));
      kv("dk.a_base", format_number(b.dk->a_base));
      kv("dk.a_refined", format_number(b.dk->a_refined));
      kv("dk.b_base", format_number(b.dk->b_base));
      kv("dk.b_extended", format_number(b.dk->b_extended));
      kv("dk.a_hat", format_number(b.dk->a_hat));
      kv("dk.b_hat", format_number(b.dk->b_hat));
    }
    for (const auto& [name, ok] : b.flags) kv("flag." + name, ok ? "pass" : "fail");
    kv("passed", b.passed() ? "true" : "false");
  }

  {
    auto out = open("summary.txt");
    out << "model " << b.config.model << ", d = " << b.config.dimension;
    if (b.config.model != "matrix") out << ", subspace " << b.config.subspace;
    out << '\n';
    if (!b.theory.psi.empty()) {
      out << "psi(lambda)       " << b.theory.psi << '\n';
      out << "predicted slope   " << short_number(-b.theory.ell / 2.0) << '\n';
      out << "bound constant C  " << short_number(b.theory.constant) << '\n';
    }
    out << "measured slope    " << short_number(b.fit.slope) << "  (r^2 = " << short_number(b.fit.r_squared)
        << ", T in [" << short_number(b.fit.t_min) << ", " << short_number(b.fit.t_max) << "])\n";
    out << "norm used for X   " << short_number(b.norm_x) << '\n';
    if (b.dk) {
      out << "DK p = " << short_number(b.dk->p) << ": A_hat " << short_number(b.dk->a_hat) << " (drift "
          << short_number(b.dk->a_drift()) << "), B_hat " << short_number(b.dk->b_hat) << " (drift "
          << short_number(b.dk->b_drift()) << ")\n";
    }
    for (const auto& [name, ok] : b.flags) out << (ok ? "PASS  " : "FAIL  ") << name << '\n';
  }
}

}  // namespace ergorate
