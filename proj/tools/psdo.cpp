// psdo: command-line front end for the scenario runner and acceptance suites.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "psdo/acceptance.hpp"
#include "psdo/presets.hpp"
#include "psdo/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void print_issues(const psdo::ConfigError& e) {
  for (const auto& i : e.issues()) std::cerr << (i.pointer.empty() ? "/" : i.pointer) << ": " << i.message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for order-0 pseudodifferential operators on the circle"};
  app.require_subcommand(1);

  std::string config_path, out_dir, suite;
  int jobs = 1;

  auto* run = app.add_subcommand("run", "Run a scenario config");
  run->add_option("config", config_path, "Scenario JSON file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides the config)");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Run an acceptance suite (criterion1..criterion9 or all)");
  verify->add_option("suite", suite, "Suite name")->required();
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* presets = app.add_subcommand("presets", "List the named symbol presets");

  auto* validate = app.add_subcommand("validate", "Validate a scenario config");
  validate->add_option("config", config_path, "Scenario JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const psdo::ScenarioConfig cfg = psdo::validate_config(read_file(config_path));
      const psdo::ScenarioResult result = psdo::run_scenario(cfg, out_dir.empty() ? cfg.output : out_dir, jobs);
      for (const auto& t : result.tasks)
        std::cout << (t.pass ? "PASS " : "FAIL ") << t.task << (t.note.empty() ? "" : ": " + t.note) << "\n";
      return result.exit_code();
    }
    if (*verify) return psdo::acceptance::run_suite(suite, std::cout, jobs);
    if (*presets) {
      for (const auto& p : psdo::preset_catalog()) {
        std::cout << p.name << (p.takes_c ? "(c)" : "") << "\n    " << p.description << "\n";
        for (const auto& [k, v] : p.pinned) std::cout << "    " << k << ": " << v << "\n";
      }
      return 0;
    }
    if (*validate) {
      const psdo::ScenarioConfig cfg = psdo::validate_config(read_file(config_path));
      std::cout << "valid: " << cfg.tasks.size() << " task(s), K list of " << cfg.K_list.size() << "\n";
      return 0;
    }
  } catch (const psdo::ConfigError& e) {
    std::cerr << "invalid config:\n";
    print_issues(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
