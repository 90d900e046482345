#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ergorate/pde_models.hpp"
#include "ergorate/rate_lab.hpp"

namespace ergorate {

RadialField::RadialField(int dimension, double rho_max, std::vector<double> radii,
                         std::vector<double> values)
    : dimension_(dimension), rho_max_(rho_max), radii_(std::move(radii)), values_(std::move(values)) {
  if (dimension_ < 1) throw std::invalid_argument("RadialField: dimension must be at least 1");
  if (!(rho_max_ > 0.0) || !std::isfinite(rho_max_)) {
    throw std::invalid_argument("RadialField: rho_max must be positive");
  }
  if (radii_.empty() || radii_.size() != values_.size()) {
    throw std::invalid_argument("RadialField: radii and values must be nonempty and equal in length");
  }
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0) || radii_[i] > rho_max_) {
      throw std::invalid_argument("RadialField: radii must lie in (0, rho_max]");
    }
    if (i > 0 && !(radii_[i] > radii_[i - 1])) {
      throw std::invalid_argument("RadialField: radii must be strictly increasing");
    }
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw std::invalid_argument("RadialField: profile values must be finite and nonnegative");
    }
  }
}

RadialField RadialField::sample(int dimension, double rho_max, std::size_t n,
                                const std::function<double(double)>& profile) {
  if (n == 0) throw std::invalid_argument("RadialField::sample: need at least one radius");
  std::vector<double> radii(n);
  std::vector<double> values(n);
  const double h = rho_max / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    radii[j] = (static_cast<double>(j) + 0.5) * h;
    values[j] = profile(radii[j]);
  }
  return RadialField(dimension, rho_max, std::move(radii), std::move(values));
}

double RadialField::value_at(double rho) const {
  if (rho <= radii_.front()) return values_.front();
  if (rho > rho_max_) return 0.0;
  if (rho >= radii_.back()) return values_.back();
  const auto it = std::upper_bound(radii_.begin(), radii_.end(), rho);
  const auto j = static_cast<std::size_t>(it - radii_.begin());
  const double t = (rho - radii_[j - 1]) / (radii_[j] - radii_[j - 1]);
  return values_[j - 1] + t * (values_[j] - values_[j - 1]);
}

std::vector<double> RadialField::cell_widths() const {
  const std::size_t n = radii_.size();
  std::vector<double> w(n);
  double left = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double right = (j + 1 < n) ? 0.5 * (radii_[j] + radii_[j + 1]) : rho_max_;
    w[j] = right - left;
    left = right;
  }
  return w;
}

double RadialField::l2_mass() const {
  const auto w = cell_widths();
  const double area = sphere_area(dimension_);
  double sum = 0.0;
  for (std::size_t j = 0; j < radii_.size(); ++j) {
    sum += w[j] * values_[j] * values_[j] * std::pow(radii_[j], dimension_ - 1);
  }
  return area * sum;
}

void write_radial_field(std::ostream& out, const RadialField& field) {
  out << field.dimension() << ' ' << format_number(field.rho_max()) << ' ' << field.radii().size()
      << '\n';
  for (std::size_t j = 0; j < field.radii().size(); ++j) {
    out << format_number(field.radii()[j]) << ' ' << format_number(field.values()[j]) << '\n';
  }
}

namespace {

double to_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("read_radial_field: bad number '" + s + "'");
  }
  return v;
}

}  // namespace

RadialField read_radial_field(std::istream& in) {
  std::string line;
  auto next_line = [&](std::istringstream& fields) {
    while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      fields = std::istringstream(line);
      return true;
    }
    return false;
  };

  std::istringstream header;
  if (!next_line(header)) throw std::invalid_argument("read_radial_field: missing header");
  int d = 0;
  std::string rho_max_text;
  std::size_t n = 0;
  if (!(header >> d >> rho_max_text >> n)) {
    throw std::invalid_argument("read_radial_field: header must be 'd rho_max n'");
  }
  std::vector<double> radii;
  std::vector<double> values;
  radii.reserve(n);
  values.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::istringstream row;
    std::string rho;
    std::string value;
    if (!next_line(row) || !(row >> rho >> value)) {
      throw std::invalid_argument("read_radial_field: expected " + std::to_string(n) + " rows");
    }
    radii.push_back(to_double(rho));
    values.push_back(to_double(value));
  }
  return RadialField(d, to_double(rho_max_text), std::move(radii), std::move(values));
}

namespace profiles {

double flat_top_bump(double rho) {
  if (rho <= 0.5) return 1.0;
  if (rho >= 1.0) return 0.0;
  const double t = (rho - 0.5) / 0.5;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return b / (a + b);
}

double gaussian(double rho) { return std::exp(-0.5 * rho * rho); }

double box(double rho) { return rho <= 1.0 ? 1.0 : 0.0; }

}  // namespace profiles

RadialField make_preset_field(const std::string& preset, int dimension, double rho_max, std::size_t n) {
  if (preset == "bump") return RadialField::sample(dimension, rho_max, n, profiles::flat_top_bump);
  if (preset == "gaussian") return RadialField::sample(dimension, rho_max, n, profiles::gaussian);
  if (preset == "box") return RadialField::sample(dimension, rho_max, n, profiles::box);
  if (preset == "singular") {
    const double power = -0.5 * static_cast<double>(dimension - 1);
    return RadialField::sample(dimension, rho_max, n, [power](double rho) {
      return profiles::flat_top_bump(rho) * std::pow(rho, power);
    });
  }
  throw std::invalid_argument("unknown data preset '" + preset + "'");
}

}  // namespace ergorate
