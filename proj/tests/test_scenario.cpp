#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "psdo/presets.hpp"
#include "psdo/scenario.hpp"

using namespace psdo;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("psdo_test_" + name);
  fs::remove_all(d);
  return d;
}

std::set<std::string> listing(const fs::path& d) {
  std::set<std::string> out;
  for (const auto& e : fs::directory_iterator(d)) out.insert(e.path().filename().string());
  return out;
}

std::vector<std::string> pointers_of(const std::string& text) {
  std::vector<std::string> out;
  try {
    validate_config(text);
  } catch (const ConfigError& e) {
    for (const auto& i : e.issues()) out.push_back(i.pointer);
  }
  return out;
}

ScenarioConfig parse(const std::string& text) { return validate_config(text); }

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

}  // namespace

TEST_CASE("a minimal config validates") {
  const ScenarioConfig cfg = parse(R"j({"symbol": {"preset": "cosine"}, "K_list": [16], "tasks": {}})j");
  CHECK(cfg.preset == "cosine");
  CHECK(cfg.t == 0.5);
  CHECK(cfg.K_list == std::vector<int>{16});
  CHECK(cfg.seed == 0);
}

TEST_CASE("inline symbols validate with profile grammar errors reported by pointer") {
  const auto p = pointers_of(R"j({"symbol": {"coeffs": [{"l": 0, "profile": "bump(0, 6, 4)"}]}, "K_list": [4], "tasks": {}})j");
  REQUIRE(p.size() == 1);
  CHECK(p[0] == "/symbol/coeffs/0/profile");
  try {
    parse(R"j({"symbol": {"coeffs": [{"l": 0, "profile": "bump(0, 6, 4)"}]}, "K_list": [4], "tasks": {}})j");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("r_in < r_out") != std::string::npos);
  }
}

TEST_CASE("missing task parameters are reported with JSON pointers") {
  const auto p = pointers_of(
      R"j({"symbol": {"preset": "example13"}, "K_list": [64], "tasks": {"mourre": {"enclosing": [-0.8, 0.8]}}})j");
  CHECK(has(p, "/tasks/mourre/interval"));
}

TEST_CASE("validation aggregates every problem") {
  const auto p = pointers_of(R"j({
    "symbol": {"preset": "cosine", "c": 2},
    "t": 1.5,
    "K_list": [32, 16],
    "tasks": {"bogus": {}, "stability": {}, "density": {"probe": "x"}, "hscheck": {"interval": [0.5, -0.5], "enclosing": [-1, 1], "ny": 3}},
    "extra": 1
  })j");
  for (const char* want : {"/symbol/c", "/t", "/K_list/1", "/tasks/bogus", "/K_list", "/tasks/density/grid",
                           "/tasks/density/probe", "/tasks/hscheck/interval", "/tasks/hscheck/ny", "/extra"})
    CHECK_MESSAGE(has(p, want), want);
}

TEST_CASE("semantic checks against the built symbol") {
  CHECK(has(pointers_of(R"j({"symbol": {"coeffs": [{"l": 3, "profile": "1"}, {"l": -3, "profile": "1"}]}, "K_list": [2], "tasks": {}})j"),
            "/K_list/0"));
  CHECK(has(pointers_of(R"j({"symbol": {"coeffs": [{"l": 0, "profile": "i"}]}, "K_list": [8], "tasks": {"spectrum": {}}})j"),
            "/tasks/spectrum"));
  CHECK(has(pointers_of(R"j({"symbol": {"preset": "example14"}, "K_list": [8], "tasks": {"essential": {}}})j"),
            "/tasks/essential"));
  CHECK(has(pointers_of(R"j({"symbol": {"preset": "nope"}, "K_list": [8], "tasks": {}})j"), "/symbol/preset"));
  CHECK(has(pointers_of("{not json"), ""));
}

TEST_CASE("preset catalog") {
  for (const char* name : {"example13", "example14", "cosine", "dirstep", "twodirection", "scattering"})
    CHECK(preset_info(name).name == name);
  CHECK(preset_info("scattering").takes_c);
  CHECK_FALSE(preset_info("example13").pinned.empty());
  CHECK_THROWS_AS(build_preset("nope"), std::invalid_argument);
  CHECK(std::holds_alternative<TorusSymbol2D>(build_preset("example14")));
}

TEST_CASE("golden outputs for the embedded-eigenvalue examples") {
  for (const char* name : {"example13", "example14"}) {
    const fs::path golden = fs::path(PSDO_GOLDEN_DIR) / name;
    const ScenarioConfig cfg = validate_config(slurp(golden / "config.json"));
    const fs::path out = scratch_dir(name);
    const ScenarioResult r = run_scenario(cfg, out);
    CHECK(r.exit_code() == 0);
    const fs::path expected = golden / "expected";
    CHECK(listing(out) == listing(expected));
    for (const auto& f : listing(expected)) {
      INFO(name << "/" << f);
      CHECK(slurp(out / f) == slurp(expected / f));
    }
    fs::remove_all(out);
  }
}

TEST_CASE("example13 summary states the persistent eigenvalue inside the band") {
  const fs::path golden = fs::path(PSDO_GOLDEN_DIR) / "example13" / "expected";
  const std::string summary = slurp(golden / "summary.md");
  CHECK(summary.find("persistent eigenvalue 0") != std::string::npos);
  CHECK(summary.find("inside band [-1, 1]") != std::string::npos);
  CHECK(slurp(golden / "spectrum.csv").find("0.0000000000000000e+00,embedded-candidate,1.0000000000000000e+00") !=
        std::string::npos);
}

TEST_CASE("runs are byte-identical for identical config and seed") {
  const std::string text = R"j({
    "symbol": {"preset": "cosine"},
    "K_list": [16, 32, 64],
    "tasks": {"essential": {}, "spectrum": {}, "stability": {},
              "density": {"grid": {"lo": -1.2, "hi": 1.2, "n": 41}, "probe": "random"}},
    "seed": 12345
  })j";
  const ScenarioConfig cfg = validate_config(text);
  const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
  run_scenario(cfg, a, 1);
  run_scenario(cfg, b, 2);
  REQUIRE(listing(a) == listing(b));
  for (const auto& f : listing(a)) CHECK_MESSAGE(slurp(a / f) == slurp(b / f), f);

  // A different seed changes the random probe and therefore the density.
  ScenarioConfig other = cfg;
  other.seed = 54321;
  const fs::path c = scratch_dir("det_c");
  run_scenario(other, c, 1);
  CHECK(slurp(a / "density.csv") != slurp(c / "density.csv"));
  CHECK(slurp(a / "spectrum.csv") == slurp(c / "spectrum.csv"));
  for (const auto& d : {a, b, c}) fs::remove_all(d);
}

TEST_CASE("cosine scenario reports Hausdorff distance within tolerance at K = 256") {
  const ScenarioConfig cfg =
      parse(R"j({"symbol": {"preset": "cosine"}, "K_list": [256], "tasks": {"essential": {}, "spectrum": {}}})j");
  const fs::path out = scratch_dir("cosine");
  const ScenarioResult r = run_scenario(cfg, out);
  CHECK(r.exit_code() == 0);
  const Json spec = Json::parse(slurp(out / "spectrum.json"));
  CHECK(spec[0]["hausdorff_to_bands"].get<double>() <= 0.05);
  fs::remove_all(out);
}

TEST_CASE("task failures are recorded without aborting the scenario") {
  // The enclosing interval reaches the critical value 1 of the cosine.
  const ScenarioConfig cfg = parse(R"j({"symbol": {"preset": "cosine"}, "K_list": [32],
      "tasks": {"essential": {}, "mourre": {"interval": [0.2, 0.5], "enclosing": [0.1, 1.5]}}})j");
  const fs::path out = scratch_dir("fail");
  const ScenarioResult r = run_scenario(cfg, out);
  CHECK(r.exit_code() == 1);
  REQUIRE(r.tasks.size() == 2);
  CHECK(r.tasks[0].pass);
  CHECK_FALSE(r.tasks[1].pass);
  CHECK(fs::exists(out / "summary.md"));
  fs::remove_all(out);
}
