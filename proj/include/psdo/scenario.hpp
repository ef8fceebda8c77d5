#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "psdo/io.hpp"

namespace psdo {

/// Task names understood by run_scenario, in execution order.
const std::vector<std::string>& scenario_tasks();

struct ScenarioConfig {
  std::string preset;      // empty for an inline symbol
  double preset_c = 1.0;   // scattering parameter
  Json inline_symbol;      // {order?, coeffs: [...]} when preset is empty
  double t = 0.5;
  std::vector<int> K_list;
  Json tasks = Json::object();  // task name -> parameter object
  std::string output = "out";
  std::uint64_t seed = 0;

  bool has_task(const std::string& name) const { return tasks.contains(name); }
};

struct ValidationIssue {
  std::string pointer;  // JSON pointer into the config
  std::string message;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

/// Full structural and semantic validation; throws ConfigError listing every
/// problem found.
ScenarioConfig validate_config(const std::string& text);
ScenarioConfig validate_config(const Json& j);

struct TaskOutcome {
  std::string task;
  bool pass = true;
  std::string note;
};

struct ScenarioResult {
  std::vector<TaskOutcome> tasks;
  int exit_code() const;
};

/// Runs every configured task, writing artifacts into out_dir. Task failures
/// (including exceptions) are recorded per task.
ScenarioResult run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir, int jobs = 1);

}  // namespace psdo
