#pragma once

#include <cstdint>
#include <exception>
#include <string>
#include <vector>

#include <json.hpp>

namespace schreier::experiment {

enum ExitCode { kExitOk = 0, kExitInternal = 1, kExitConfig = 2, kExitVerification = 3, kExitResourceCap = 4 };

// {kind, target, seed, params, out}. kind is verify, growth, probe or export;
// seed is a mandatory unsigned integer.
struct ExperimentConfig {
  std::string kind;
  std::string target;
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
  std::string out;
  nlohmann::json canonical;  // config minus "out"; the digest is taken over its dump
};

ExperimentConfig parse_config(const nlohmann::json& config);
ExperimentConfig parse_config_text(const std::string& text);

// Hex SHA-256 of canonical.dump().
std::string config_digest(const ExperimentConfig& config);

struct RunResult {
  bool passed = false;
  std::string digest;
  nlohmann::json summary;
  std::vector<std::string> files;  // written, in order
};

// Runs one experiment and writes its artifacts plus summary.json to out_dir
// (the config's "out" when empty, else the current directory). Failed checks
// still write everything and come back with passed = false.
RunResult run_experiment(const ExperimentConfig& config, const std::string& out_dir, unsigned jobs);

// Maps a core exception to its exit code.
int exit_code_for(const std::exception_ptr& error);

}  // namespace schreier::experiment
