#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "ergorate/cli.hpp"

namespace ergorate {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw std::invalid_argument("expected a number, got '" + v + "'");
  return out;
}

template <class Int>
Int to_integer(const std::string& v) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw std::invalid_argument("expected an integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw std::invalid_argument("expected true or false, got '" + v + "'");
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"model", [](auto& c, const auto& v) { c.model = v; }},
      {"dimension", [](auto& c, const auto& v) { c.dimension = to_integer<int>(v); }},
      {"symbol", [](auto& c, const auto& v) { c.symbol = v; }},
      {"subspace", [](auto& c, const auto& v) { c.subspace = v; }},
      {"data.preset", [](auto& c, const auto& v) { c.data_preset = v; }},
      {"data.file", [](auto& c, const auto& v) { c.data_file = v; }},
      {"data.velocity_preset", [](auto& c, const auto& v) { c.velocity_preset = v; }},
      {"data.rho_max", [](auto& c, const auto& v) { c.rho_max = to_double(v); }},
      {"data.nodes", [](auto& c, const auto& v) { c.nodes = to_integer<std::size_t>(v); }},
      {"time.min", [](auto& c, const auto& v) { c.t_min = to_double(v); }},
      {"time.max", [](auto& c, const auto& v) { c.t_max = to_double(v); }},
      {"time.per_decade", [](auto& c, const auto& v) { c.t_per_decade = to_integer<int>(v); }},
      {"params.epsilon", [](auto& c, const auto& v) { c.epsilon = to_double(v); }},
      {"params.r", [](auto& c, const auto& v) { c.r = to_double(v); }},
      {"params.p", [](auto& c, const auto& v) { c.p = to_double(v); }},
      {"params.c", [](auto& c, const auto& v) { c.c = to_double(v); }},
      {"params.norm_x", [](auto& c, const auto& v) { c.norm_x = to_double(v); }},
      {"matrix.dimension", [](auto& c, const auto& v) { c.matrix_dimension = to_integer<std::size_t>(v); }},
      {"matrix.gap", [](auto& c, const auto& v) { c.gap = to_double(v); }},
      {"matrix.seed", [](auto& c, const auto& v) { c.seed = to_integer<std::uint64_t>(v); }},
      {"matrix.spectrum_radius", [](auto& c, const auto& v) { c.spectrum_radius = to_double(v); }},
      {"measure.file", [](auto& c, const auto& v) { c.measure_file = v; }},
      {"fit.mode",
       [](auto& c, const auto& v) {
         if (v == "envelope") c.fit_mode = FitMode::envelope;
         else if (v == "raw") c.fit_mode = FitMode::raw;
         else throw std::invalid_argument("expected envelope or raw, got '" + v + "'");
       }},
      {"fit.slope_tolerance", [](auto& c, const auto& v) { c.slope_tolerance = to_double(v); }},
      {"dk.enabled", [](auto& c, const auto& v) { c.dk_enabled = to_bool(v); }},
      {"dk.p", [](auto& c, const auto& v) { c.dk_p = to_double(v); }},
      {"output.dir", [](auto& c, const auto& v) { c.output_dir = v; }},
  };
  return table;
}

void require(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw std::invalid_argument(key + ": " + message);
}

void validate(const ExperimentConfig& c) {
  require(c.model == "matrix" || c.model == "measure" || c.model == "schrodinger" || c.model == "wave", "model",
          "expected matrix, measure, schrodinger or wave");
  require(c.dimension >= 1, "dimension", "must be at least 1");
  require(c.subspace == "weighted" || c.subspace == "l1l2", "subspace", "expected weighted or l1l2");
  require(c.rho_max > 0.0, "data.rho_max", "must be positive");
  require(c.nodes >= 8, "data.nodes", "need at least 8 radii");
  require(c.t_min > 0.0, "time.min", "must be positive");
  require(c.t_max >= 10.0 * c.t_min, "time.max", "T range must span at least one decade");
  require(c.t_per_decade >= 1, "time.per_decade", "must be at least 1");
  require(c.epsilon > 0.0, "params.epsilon", "must be positive");
  require(c.r > 0.0 && c.r < 1.0, "params.r", "must lie in (0,1)");
  require(!c.p || *c.p > 0.0, "params.p", "must be positive");
  require(!c.c || *c.c > 0.0, "params.c", "must be positive");
  require(!c.norm_x || *c.norm_x > 0.0, "params.norm_x", "must be positive");
  require(c.matrix_dimension >= 2, "matrix.dimension", "must be at least 2");
  require(c.gap > 0.0, "matrix.gap", "must be positive");
  require(c.spectrum_radius > c.gap, "matrix.spectrum_radius", "must exceed matrix.gap");
  require(c.model != "measure" || !c.measure_file.empty(), "measure.file", "required for model = measure");
  require(c.model != "measure" || c.p.has_value() == c.c.has_value(), "params.p",
          "params.p and params.c go together");
  require(c.slope_tolerance > 0.0, "fit.slope_tolerance", "must be positive");
  require(!c.dk_p || (*c.dk_p > 0.0 && *c.dk_p < 2.0), "dk.p", "must lie in (0,2)");
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  ExperimentConfig config;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw std::invalid_argument(where + ": unknown key '" + key + "'");
    try {
      it->second(config, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": " + key + ": " + e.what());
    }
  }
  try {
    validate(config);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(source + ": " + e.what());
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_config: cannot open " + path.string());
  ExperimentConfig config = parse_config(in, path.string());
  // Relative data paths are taken relative to the config file.
  const auto base = path.parent_path();
  if (!config.data_file.empty() && std::filesystem::path(config.data_file).is_relative()) {
    config.data_file = (base / config.data_file).string();
  }
  if (!config.measure_file.empty() && std::filesystem::path(config.measure_file).is_relative()) {
    config.measure_file = (base / config.measure_file).string();
  }
  if (config.output_dir.empty()) config.output_dir = path.stem().string();
  return config;
}

std::string echo_config(const ExperimentConfig& c) {
  std::ostringstream out;
  auto line = [&out](const std::string& key, const std::string& value) {
    if (!value.empty()) out << key << " = " << value << '\n';
  };
  auto optional = [&line](const std::string& key, const std::optional<double>& v) {
    if (v) line(key, format_number(*v));
  };
  line("model", c.model);
  line("dimension", std::to_string(c.dimension));
  line("symbol", c.symbol);
  line("subspace", c.subspace);
  line("data.preset", c.data_preset);
  line("data.file", c.data_file);
  line("data.velocity_preset", c.velocity_preset);
  line("data.rho_max", format_number(c.rho_max));
  line("data.nodes", std::to_string(c.nodes));
  line("time.min", format_number(c.t_min));
  line("time.max", format_number(c.t_max));
  line("time.per_decade", std::to_string(c.t_per_decade));
  line("params.epsilon", format_number(c.epsilon));
  line("params.r", format_number(c.r));
  optional("params.p", c.p);
  optional("params.c", c.c);
  optional("params.norm_x", c.norm_x);
  line("matrix.dimension", std::to_string(c.matrix_dimension));
  line("matrix.gap", format_number(c.gap));
  line("matrix.seed", std::to_string(c.seed));
  line("matrix.spectrum_radius", format_number(c.spectrum_radius));
  line("measure.file", c.measure_file);
  line("fit.mode", c.fit_mode == FitMode::envelope ? "envelope" : "raw");
  line("fit.slope_tolerance", format_number(c.slope_tolerance));
  line("dk.enabled", c.dk_enabled ? "true" : "false");
  optional("dk.p", c.dk_p);
  line("output.dir", c.output_dir);
  return out.str();
}

}  // namespace ergorate
