#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "schreier/schreier.h"

namespace {

using nlohmann::json;

// Options that land in config.params only when given on the command line.
struct ParamOptions {
  json params = json::object();
  std::vector<std::function<void()>> collect;

  template <typename T>
  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(flag, *value, help);
    if constexpr (std::is_same_v<T, std::vector<std::int64_t>>) opt->delimiter(',');
    collect.push_back([this, opt, value, key] {
      if (opt->count() > 0) params[key] = *value;
    });
  }
};

int exit_code(sch_status s) {
  switch (s) {
    case SCH_OK:
      return 0;
    case SCH_ERR_CONFIG:
    case SCH_ERR_INVALID_ARGUMENT:
    case SCH_ERR_DOMAIN:
    case SCH_ERR_CAPABILITY:
      return 2;
    case SCH_ERR_VERIFICATION:
      return 3;
    case SCH_ERR_RESOURCE_CAP:
      return 4;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schreier graph experiments: verification suites, growth tables, probes, DOT export"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out_dir;
  CLI::Option* seed_opt = app.add_option("--seed", seed, "Random seed (default 0)");
  app.add_option("--config", config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  CLI::Option* out_opt = app.add_option("--out", out_dir, "Output directory");

  std::string kind;
  std::string target;
  ParamOptions opts;

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("target", target, "grigorchuk | lamplighter | houghton | gluing")
      ->required()
      ->check(CLI::IsMember({"grigorchuk", "lamplighter", "houghton", "gluing"}));
  opts.add<std::int64_t>(verify, "--max-level", "max_level", "Grigorchuk: deepest level");
  opts.add<std::int64_t>(verify, "--max-word", "max_word", "Grigorchuk: longest word");
  opts.add<std::int64_t>(verify, "--p", "p", "Lamplighter: lamp group order");
  opts.add<std::int64_t>(verify, "--d", "d", "Lamplighter: rank of the base");
  opts.add<std::int64_t>(verify, "--max-length", "max_length", "Lamplighter: longest element");
  opts.add<std::int64_t>(verify, "--m-max", "m_max", "Lamplighter: largest modulus");
  opts.add<std::int64_t>(verify, "--n-max", "n_max", "Houghton: largest radius");
  opts.add<std::int64_t>(verify, "--pair-n-max", "pair_n_max", "Houghton: largest pair index");

  CLI::App* growth = app.add_subcommand("growth", "Growth table and exponent fit for a family of actions");
  growth->add_option("family", target, "lamplighter | grigorchuk | houghton | gluing-cd")
      ->required()
      ->check(CLI::IsMember({"lamplighter", "grigorchuk", "houghton", "gluing-cd"}));
  opts.add<std::int64_t>(growth, "--p", "p", "Lamplighter: lamp group order");
  opts.add<std::int64_t>(growth, "--d", "d", "Lamplighter: rank of the base");
  opts.add<std::int64_t>(growth, "--m-max", "m_max", "Lamplighter: largest modulus");
  opts.add<std::int64_t>(growth, "--n-max", "n_max", "Largest radius");
  opts.add<std::int64_t>(growth, "--max-level", "max_level", "Grigorchuk: deepest level");
  opts.add<std::int64_t>(growth, "--fit-lo", "fit_lo", "Smallest radius in the fit");
  opts.add<double>(growth, "--tolerance", "tolerance", "Allowed exponent error");

  CLI::App* probe = app.add_subcommand("probe", "Sparse-support lower bound probe");
  probe->add_option("target", target, "free-product")->required()->check(CLI::IsMember({"free-product"}));
  opts.add<std::string>(probe, "--left", "left", "Factor G (houghton2)");
  opts.add<std::string>(probe, "--right", "right", "Factor H (Z)");
  opts.add<std::vector<std::int64_t>>(probe, "--R", "R", "Radii, comma separated");
  opts.add<double>(probe, "--C", "C", "Constant C");
  opts.add<std::int64_t>(probe, "--D", "D", "Constant D");
  opts.add<double>(probe, "--min-slope", "min_slope", "Smallest accepted slope");

  CLI::App* exp = app.add_subcommand("export", "Export a graph");
  exp->add_option("target", target, "dot")->required()->check(CLI::IsMember({"dot"}));
  opts.add<std::string>(exp, "--graph", "graph", "grigorchuk | lamplighter | cycle | gluing");
  opts.add<std::int64_t>(exp, "--level", "level", "Grigorchuk level");
  opts.add<std::int64_t>(exp, "--p", "p", "Lamplighter: lamp group order");
  opts.add<std::int64_t>(exp, "--d", "d", "Lamplighter: rank of the base");
  opts.add<std::int64_t>(exp, "--m", "m", "Modulus or cycle length");

  CLI11_PARSE(app, argc, argv);

  for (CLI::App* sub : {verify, growth, probe, exp}) {
    if (sub->parsed()) kind = sub->get_name();
  }
  for (auto& c : opts.collect) c();

  json config;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    std::stringstream text;
    text << in.rdbuf();
    try {
      config = json::parse(text.str());
    } catch (const json::parse_error& e) {
      std::cerr << "error: " << config_path << ": " << e.what() << "\n";
      return 2;
    }
    if (!config.is_object()) {
      std::cerr << "error: " << config_path << ": config must be an object\n";
      return 2;
    }
    if (!kind.empty() && (config.value("kind", "") != kind || config.value("target", "") != target)) {
      std::cerr << "error: subcommand does not match the config's kind/target\n";
      return 2;
    }
    if (seed_opt->count() > 0) config["seed"] = seed;
    for (const auto& [key, value] : opts.params.items()) config["params"][key] = value;
  } else {
    if (kind.empty()) {
      std::cerr << app.help();
      return 2;
    }
    json params = opts.params;
    if (kind == "growth" && params.contains("m_max") && !params.contains("n_max")) {
      params["n_max"] = std::min<std::int64_t>(64, params["m_max"].get<std::int64_t>() / 2 - 1);
    }
    config = {{"kind", kind}, {"target", target}, {"seed", seed}, {"params", params}};
  }

  int passed = 0;
  char* summary = nullptr;
  const sch_status status =
      sch_run_experiment(config.dump().c_str(), out_opt->count() > 0 ? out_dir.c_str() : nullptr, jobs, &passed, &summary);
  if (status != SCH_OK) {
    std::cerr << "error: " << sch_last_error() << "\n";
    return exit_code(status);
  }
  std::cout << summary << "\n";
  sch_string_free(summary);
  return passed ? 0 : 3;
}
