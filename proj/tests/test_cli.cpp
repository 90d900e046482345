#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "ergorate/cli.hpp"

using namespace ergorate;
namespace fs = std::filesystem;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ergorate_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

bool flag(const ResultBundle& b, const std::string& name) {
  for (const auto& [n, ok] : b.flags) {
    if (n == name) return ok;
  }
  FAIL("missing flag " << name);
  return false;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("keys, comments and defaults") {
    const auto c = parse(
        "# a comment\n"
        "model = schrodinger   # trailing comment\n"
        "\n"
        "dimension = 3\n"
        "subspace = weighted\n"
        "time.max = 1e3\n"
        "params.norm_x = 2.5\n"
        "fit.mode = raw\n"
        "dk.enabled = yes\n");
    CHECK(c.model == "schrodinger");
    CHECK(c.dimension == 3);
    CHECK(c.subspace == "weighted");
    CHECK(c.t_max == 1e3);
    CHECK(c.t_min == 10.0);
    CHECK(c.norm_x.value() == 2.5);
    CHECK(c.fit_mode == FitMode::raw);
    CHECK(c.dk_enabled);
    CHECK_FALSE(c.p.has_value());
  }

  TEST_CASE("errors name the source line and key") {
    auto message = [](const std::string& text) {
      try {
        parse(text);
      } catch (const std::invalid_argument& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message("model = wave\ncolour = red\n").find("test.cfg:2: unknown key 'colour'") != std::string::npos);
    CHECK(message("model = wave\ndimension = three\n").find("test.cfg:2: dimension") != std::string::npos);
    CHECK(message("model = wave\nno equals sign\n").find("test.cfg:2") != std::string::npos);
    CHECK(message("model = heat\n").find("model") != std::string::npos);
    CHECK(message("model = wave\nparams.r = 1.5\n").find("params.r") != std::string::npos);
    CHECK(message("model = wave\ntime.min = 100\ntime.max = 200\n").find("time.max") != std::string::npos);
    CHECK(message("model = measure\n").find("measure.file") != std::string::npos);
    CHECK(message("model = wave\ndk.p = 2\n").find("dk.p") != std::string::npos);
  }

  TEST_CASE("echo reads back to the same config") {
    const auto c = parse("model = matrix\nmatrix.seed = 42\nmatrix.gap = 0.5\nparams.p = 1.25\nparams.c = 2\n");
    const auto again = parse(echo_config(c));
    CHECK(echo_config(again) == echo_config(c));
    CHECK(again.seed == 42);
    CHECK(again.p.value() == 1.25);
  }

  TEST_CASE("load_config resolves paths against the config file") {
    const auto dir = scratch_dir("load");
    {
      std::ofstream out(dir / "exp.cfg");
      out << "model = measure\nmeasure.file = mu.txt\n";
    }
    const auto c = load_config(dir / "exp.cfg");
    CHECK(fs::path(c.measure_file) == dir / "mu.txt");
    CHECK(c.output_dir == "exp");
    CHECK_THROWS_AS(load_config(dir / "missing.cfg"), std::invalid_argument);
  }
}

TEST_SUITE("run") {
  TEST_CASE("gap matrix respects T·defect <= 1") {
    const auto b = run_experiment(parse("model = matrix\nmatrix.gap = 1\ntime.min = 2\n"));
    CHECK(flag(b, "gap_bound"));
    CHECK(b.passed());
    CHECK(b.norm_x == doctest::Approx(1.0).epsilon(1e-14));
    for (const auto& s : upper_envelope(b.curve)) CHECK(s.T * s.defect <= 1.0 + 1e-12);
  }

  TEST_CASE("Schrödinger d = 1 weighted") {
    const auto b = run_experiment(parse("model = schrodinger\ndimension = 1\nsubspace = weighted\n"));
    CHECK(b.theory.ell / 2.0 == doctest::Approx(0.245));
    CHECK(std::abs(b.fit.slope + 0.25) <= 0.05);
    CHECK(flag(b, "bound_respected"));
    CHECK(b.passed());
  }

  TEST_CASE("wave d = 3 with L1-type data") {
    const auto b = run_experiment(parse("model = wave\ndimension = 3\nsubspace = l1l2\n"));
    CHECK(std::abs(b.fit.slope + 1.0) <= 0.05);
    CHECK(b.theory.ell == 2.0);
    CHECK(b.passed());
  }

  TEST_CASE("a too-small norm makes the bound flag fail") {
    const auto b = run_experiment(parse("model = schrodinger\ndimension = 3\nparams.norm_x = 1e-3\n"));
    CHECK_FALSE(flag(b, "bound_respected"));
    CHECK_FALSE(b.passed());
  }

  TEST_CASE("measure files, DK and error context") {
    const auto dir = scratch_dir("measure");
    {
      SampledDensity d;
      for (int i = -400; i <= 400; ++i) {
        if (i == 0) continue;
        const double s = i / 400.0;
        const double l = 0.5 * s * std::abs(s);
        d.grid.push_back(l);
        d.values.push_back(std::sqrt(std::abs(l)));  // |λ|^{p-1} with p = 1.5
      }
      std::ofstream out(dir / "mu.txt");
      write_measure(out, SpectralMeasure({{0.0, 0.1}}, d));
    }
    std::ofstream(dir / "exp.cfg") << "model = measure\nmeasure.file = mu.txt\nparams.p = 1.5\nparams.c = 1\n"
                                      "dk.enabled = true\ndk.p = 1.5\n";
    const auto b = run_experiment(load_config(dir / "exp.cfg"));
    REQUIRE(b.dk.has_value());
    CHECK(b.dk->a_finite);
    CHECK(b.dk->b_finite);
    CHECK(flag(b, "bound_respected"));
    CHECK(flag(b, "dk_consistent"));

    auto broken = load_config(dir / "exp.cfg");
    broken.measure_file = (dir / "absent.txt").string();
    try {
      run_experiment(broken);
      FAIL("expected an error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).rfind("measure.file: ", 0) == 0);
    }
    CHECK_THROWS_WITH_AS(run_experiment(parse("model = schrodinger\ndata.preset = zigzag\n")),
                         doctest::Contains("data.preset"), std::runtime_error);
  }
}

TEST_SUITE("bundles") {
  TEST_CASE("reruns are byte-identical and compare makes one row per bundle") {
    const auto dir = scratch_dir("bundles");
    const auto config = parse("model = matrix\nmatrix.seed = 9\nmatrix.dimension = 12\n");
    write_bundle(dir / "a", run_experiment(config));
    write_bundle(dir / "b", run_experiment(config));
    for (const char* f : {"config.txt", "curve.csv", "bundle.txt", "summary.txt"}) {
      CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
      CHECK_FALSE(slurp(dir / "a" / f).empty());
    }
    const auto echoed = parse(slurp(dir / "a" / "config.txt"));
    CHECK(echo_config(echoed) == echo_config(config));

    const auto bundle = read_bundle(dir / "a");
    CHECK(bundle.at("model") == "matrix");
    CHECK(bundle.at("passed") == "true");
    std::ostringstream table;
    write_comparison(table, {bundle});
    std::istringstream lines(table.str());
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "model,d,subspace,psi,p,ell_half,slope,C,passed");
    CHECK(row.rfind("matrix,", 0) == 0);
    CHECK(row.substr(row.size() - 5) == ",true");
    CHECK_FALSE(std::getline(lines, extra));
    CHECK_THROWS_AS(read_bundle(dir / "nothing"), std::invalid_argument);
  }

  TEST_CASE("output root follows the environment") {
    ::unsetenv("ERGORATE_OUTPUT_ROOT");
    CHECK(output_root() == fs::path("results"));
    ::setenv("ERGORATE_OUTPUT_ROOT", "/tmp/elsewhere", 1);
    CHECK(output_root() == fs::path("/tmp/elsewhere"));
    ::setenv("ERGORATE_OUTPUT_ROOT", "", 1);
    CHECK(output_root() == fs::path("results"));
    ::unsetenv("ERGORATE_OUTPUT_ROOT");
  }
}
