#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"
#include "experiment/factors.hpp"
#include "experiment/params.hpp"
#include "experiment/parallel.hpp"
#include "experiment/runner.hpp"

using namespace schreier;
using namespace schreier::experiment;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("schreier_unit_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("param reader reports field paths") {
  const auto j = nlohmann::json::parse(R"({"a": 3, "b": "x", "c": {"d": 1.5}, "e": [1, 2], "z": 0})");
  ParamReader r(j, "params");
  CHECK(r.integer("a", 0, 0, 10) == 3);
  CHECK_THROWS_WITH_AS(r.integer("b", 0, 0, 10), "params.b: must be an integer", ConfigError);
  ParamReader c = r.child("c");
  CHECK(c.number("d", 0, 0, 2) == 1.5);
  CHECK_THROWS_WITH_AS(c.number("d", 0, 0, 1), "params.c.d: out of range", ConfigError);
  CHECK(r.integers("e", {}, 0, 5) == std::vector<std::int64_t>{1, 2});
  CHECK_THROWS_WITH_AS(r.finish(), "params.z: unknown field", ConfigError);
}

TEST_CASE("factor names") {
  CHECK(make_provider("grigorchuk")->name() == "Grigorchuk");
  CHECK(make_provider("Z/5")->name() == "Z/5Z");
  CHECK(make_provider("H2")->name() == "H_2");
  CHECK(make_provider("houghton3")->name() == "H_3");
  CHECK_THROWS_AS(make_provider("SL2"), ConfigError);
  CHECK_THROWS_AS(make_provider("Z/0"), ConfigError);
}

TEST_CASE("parallel map keeps index order") {
  const auto out = parallel_map<int>(100, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i));
  CHECK_THROWS_AS(parallel_map<int>(10, 3,
                                    [](std::size_t i) -> int {
                                      if (i == 4) throw DomainError("boom");
                                      return 0;
                                    }),
                  DomainError);
}

TEST_CASE("config validation") {
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"kind": "verify", "target": "grigorchuk"})"), "seed: required",
                       ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"kind": "verify", "target": "grigorchuk", "seed": -1})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("{"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"kind": "verify", "target": "x", "seed": 1, "extra": 0})"),
                       "extra: unknown field", ConfigError);
  const auto bad_param = parse_config_text(R"({"kind": "verify", "target": "grigorchuk", "seed": 1,
                                               "params": {"max_level": 40}})");
  CHECK_THROWS_WITH_AS(run_experiment(bad_param, scratch_dir("bad").string(), 1),
                       "params.max_level: must lie in [1, 16]", ConfigError);
  const auto bad_target = parse_config_text(R"({"kind": "verify", "target": "monster", "seed": 1})");
  CHECK_THROWS_AS(run_experiment(bad_target, scratch_dir("bad").string(), 1), ConfigError);
}

TEST_CASE("digest ignores the output directory") {
  const auto a = parse_config_text(R"({"kind": "verify", "target": "grigorchuk", "seed": 1, "out": "x"})");
  const auto b = parse_config_text(R"({"kind": "verify", "target": "grigorchuk", "seed": 1})");
  const auto c = parse_config_text(R"({"kind": "verify", "target": "grigorchuk", "seed": 2})");
  CHECK(config_digest(a) == config_digest(b));
  CHECK(config_digest(a) != config_digest(c));
  CHECK(config_digest(a).size() == 64);
}

TEST_CASE("runs write headed CSVs and digested JSON") {
  const auto config = parse_config_text(R"({"kind": "probe", "target": "free-product", "seed": 3,
                                            "params": {"R": [8, 16]}})");
  const fs::path dir = scratch_dir("probe");
  const RunResult run = run_experiment(config, dir.string(), 2);
  CHECK(run.passed);
  CHECK(slurp(dir / "probe.csv").rfind("R,certified,direct,components,C1,replay_ok\n", 0) == 0);
  const auto cert = nlohmann::json::parse(slurp(dir / "probe_certificates.json"));
  CHECK(cert.at("config_digest") == run.digest);
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary.at("config_digest") == run.digest);
  CHECK(summary.at("passed") == true);
}

TEST_CASE("failed checks still write artifacts") {
  const auto config = parse_config_text(R"({"kind": "growth", "target": "houghton", "seed": 0,
                                            "params": {"n_max": 32, "tolerance": 0.001}})");
  const fs::path dir = scratch_dir("fail");
  const RunResult run = run_experiment(config, dir.string(), 1);
  CHECK_FALSE(run.passed);
  CHECK(fs::exists(dir / "growth.csv"));
  CHECK(nlohmann::json::parse(slurp(dir / "summary.json")).at("exit_code") == kExitVerification);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(std::make_exception_ptr(ConfigError("x"))) == kExitConfig);
  CHECK(exit_code_for(std::make_exception_ptr(DomainError("x"))) == kExitConfig);
  CHECK(exit_code_for(std::make_exception_ptr(VerificationError("x"))) == kExitVerification);
  CHECK(exit_code_for(std::make_exception_ptr(CapExceeded("x"))) == kExitResourceCap);
  CHECK(exit_code_for(std::make_exception_ptr(std::runtime_error("x"))) == kExitInternal);
}

TEST_CASE("same seed, same bytes") {
  const auto config = parse_config_text(R"({"kind": "verify", "target": "gluing", "seed": 11,
      "params": {"faithfulness": {"words": 40}, "growth_bound": {"gluings": 10, "radius": 16},
                 "cd_growth": {"gluings": 1, "pieces": 4, "fit_lo": 4, "fit_hi": 32}}})");
  const fs::path a = scratch_dir("det_a");
  const fs::path b = scratch_dir("det_b");
  const auto ra = run_experiment(config, a.string(), 1);
  const auto rb = run_experiment(config, b.string(), 3);
  REQUIRE(ra.files.size() == rb.files.size());
  for (std::size_t i = 0; i < ra.files.size(); ++i) {
    CHECK(slurp(ra.files[i]) == slurp(rb.files[i]));
  }
}

}
