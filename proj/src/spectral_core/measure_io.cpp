#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ergorate/spectral_core.hpp"

namespace ergorate {

namespace {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& token) {
  double v = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("read_measure: bad number '" + token + "'");
  }
  return v;
}

}  // namespace

void write_measure(std::ostream& out, const SpectralMeasure& mu) {
  out << "total_mass\n" << format17(mu.total_mass()) << '\n';
  out << "atoms\n";
  for (const auto& a : mu.atoms()) out << format17(a.location) << ' ' << format17(a.weight) << '\n';
  out << "density\n";
  if (mu.density()) {
    const auto& d = *mu.density();
    for (std::size_t i = 0; i < d.grid.size(); ++i) {
      out << format17(d.grid[i]) << ' ' << format17(d.values[i]) << '\n';
    }
  }
}

SpectralMeasure read_measure(std::istream& in) {
  enum class Section { none, total_mass, atoms, density } section = Section::none;
  std::vector<Atom> atoms;
  SampledDensity density;
  std::optional<double> total_mass;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first == "total_mass") {
      section = Section::total_mass;
      continue;
    }
    if (first == "atoms") {
      section = Section::atoms;
      continue;
    }
    if (first == "density") {
      section = Section::density;
      continue;
    }
    std::string second;
    std::string extra;
    switch (section) {
      case Section::none:
        throw std::invalid_argument("read_measure: data before any section at line " +
                                    std::to_string(line_no));
      case Section::total_mass:
        if (fields >> extra) throw std::invalid_argument("read_measure: malformed total_mass");
        total_mass = parse_double(first);
        break;
      case Section::atoms:
      case Section::density: {
        if (!(fields >> second) || (fields >> extra)) {
          throw std::invalid_argument("read_measure: expected two columns at line " +
                                      std::to_string(line_no));
        }
        const double x = parse_double(first);
        const double y = parse_double(second);
        if (section == Section::atoms) {
          atoms.push_back({x, y});
        } else {
          density.grid.push_back(x);
          density.values.push_back(y);
        }
        break;
      }
    }
  }

  std::optional<SampledDensity> maybe_density;
  if (!density.grid.empty()) maybe_density = std::move(density);
  return SpectralMeasure(std::move(atoms), std::move(maybe_density), total_mass);
}

}  // namespace ergorate
