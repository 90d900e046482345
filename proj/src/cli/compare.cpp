#include <fstream>
#include <ostream>
#include <stdexcept>

#include "ergorate/cli.hpp"

namespace ergorate {

std::map<std::string, std::string> read_bundle(const std::filesystem::path& path) {
  const auto file = std::filesystem::is_directory(path) ? path / "bundle.txt" : path;
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("read_bundle: cannot open " + file.string());
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 3);
  }
  if (!out.contains("model")) throw std::invalid_argument("read_bundle: " + file.string() + " is not a bundle");
  return out;
}

void write_comparison(std::ostream& out, const std::vector<std::map<std::string, std::string>>& bundles) {
  static const char* columns[][2] = {
      {"model", "model"},   {"d", "dimension"},          {"subspace", "subspace"},
      {"psi", "theory.psi"}, {"p", "theory.p"},          {"ell_half", "theory.ell_half"},
      {"slope", "fit.slope"}, {"C", "theory.constant"},  {"passed", "passed"},
  };
  bool first = true;
  for (const auto& c : columns) {
    out << (first ? "" : ",") << c[0];
    first = false;
  }
  out << '\n';
  for (const auto& b : bundles) {
    first = true;
    for (const auto& c : columns) {
      const auto it = b.find(c[1]);
      out << (first ? "" : ",") << (it == b.end() ? "-" : it->second);
      first = false;
    }
    out << '\n';
  }
}

}  // namespace ergorate
