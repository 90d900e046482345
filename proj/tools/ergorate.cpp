#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ergorate/cli.hpp"
#include "ergorate/dos_library.hpp"

namespace {

using namespace ergorate;

int cmd_run(const std::vector<std::string>& configs) {
  bool all_passed = true;
  for (const auto& path : configs) {
    const auto config = load_config(path);
    const auto bundle = run_experiment(config);
    const auto dir = output_root() / config.output_dir;
    write_bundle(dir, bundle);
    std::ifstream summary(dir / "summary.txt");
    std::cout << summary.rdbuf() << "-> " << dir.string() << "\n\n";
    all_passed = all_passed && bundle.passed();
  }
  return all_passed ? 0 : 1;
}

int cmd_compare(const std::vector<std::string>& paths) {
  std::vector<std::map<std::string, std::string>> bundles;
  bool all_passed = true;
  for (const auto& p : paths) {
    bundles.push_back(read_bundle(p));
    all_passed = all_passed && bundles.back()["passed"] == "true";
  }
  write_comparison(std::cout, bundles);
  return all_passed ? 0 : 1;
}

std::vector<int> parse_dimensions(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

int cmd_dos(const std::vector<std::string>& params) {
  std::string symbol = "identity";
  std::string subspace = "l1l2";
  std::string dims = "1,2,3,4,5";
  double epsilon = 0.01;
  double r = 0.5;
  for (const auto& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("dos: expected key=value, got '" + kv + "'");
    const auto key = kv.substr(0, eq);
    const auto value = kv.substr(eq + 1);
    if (key == "symbol") symbol = value;
    else if (key == "subspace") subspace = value;
    else if (key == "d") dims = value;
    else if (key == "epsilon") epsilon = std::stod(value);
    else if (key == "r") r = std::stod(value);
    else throw std::invalid_argument("dos: unknown parameter '" + key + "'");
  }
  const auto phi = SymbolFunction::from_name(symbol);
  const auto space = subspace_from_name(subspace);
  std::cout << "symbol,subspace,d,c,p,q,ell,ell_half,Psi,C\n";
  for (int d : parse_dimensions(dims)) {
    const auto dos = power_law_for(phi, space, d);
    const double q = dos.p - epsilon;
    std::cout << symbol << ',' << subspace << ',' << d << ',' << format_number(dos.c) << ','
              << format_number(dos.p) << ',' << format_number(q) << ',';
    try {
      const double ell = rate_exponent_powerlaw(dos.p, epsilon);
      const auto budget = DoSBudget::from_power_law(dos, q, r);
      std::cout << format_number(ell) << ',' << format_number(ell / 2.0) << ','
                << format_number(budget.capital_psi()) << ','
                << format_number(std::sqrt(budget.capital_psi() + 1.0 / (r * r))) << '\n';
    } catch (const std::exception& e) {
      std::cout << "-,-,-,-\n";
      std::cerr << "d = " << d << ": " << e.what() << '\n';
    }
  }
  return 0;
}

int cmd_dk(const std::string& path) {
  auto config = load_config(path);
  config.dk_enabled = true;
  const auto bundle = run_experiment(config);
  const auto& dk = *bundle.dk;
  std::cout << "p," << format_number(dk.p) << '\n'
            << "a_base," << format_number(dk.a_base) << '\n'
            << "a_refined," << format_number(dk.a_refined) << '\n'
            << "a_drift," << format_number(dk.a_drift()) << '\n'
            << "a_hat," << format_number(dk.a_hat) << '\n'
            << "b_base," << format_number(dk.b_base) << '\n'
            << "b_extended," << format_number(dk.b_extended) << '\n'
            << "b_drift," << format_number(dk.b_drift()) << '\n'
            << "b_hat," << format_number(dk.b_hat) << '\n'
            << "consistent," << (dk.consistent() ? "true" : "false") << '\n';
  return dk.consistent() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convergence rates of ergodic averages under density-of-states bounds"};
  app.require_subcommand(1);

  std::vector<std::string> configs;
  auto* run = app.add_subcommand("run", "Run experiments and write result bundles");
  run->add_option("config", configs, "Experiment config files")->required()->check(CLI::ExistingFile);

  std::vector<std::string> bundles;
  auto* compare = app.add_subcommand("compare", "Tabulate result bundles against theory");
  compare->add_option("bundle", bundles, "Bundle directories or bundle.txt files")->required()->check(CLI::ExistingPath);

  std::vector<std::string> params;
  auto* dos = app.add_subcommand("dos", "Print the psi/Psi/ell/C table for a symbol and subspace");
  dos->add_option("params", params, "symbol=, subspace=, d=1,3,5, epsilon=, r=");

  std::string dk_config;
  auto* dk = app.add_subcommand("dk", "Run the two-sided DK equivalence check for a config");
  dk->add_option("config", dk_config, "Experiment config file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(configs);
    if (*compare) return cmd_compare(bundles);
    if (*dos) return cmd_dos(params);
    if (*dk) return cmd_dk(dk_config);
  } catch (const std::exception& e) {
    std::cerr << "ergorate: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
