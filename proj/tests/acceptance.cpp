// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "experiment/runner.hpp"
#include "experiment/suites.hpp"
#include "gluing/gluing.hpp"
#include "lamplighter/lamplighter.hpp"

using namespace schreier;
using namespace schreier::experiment;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome grigorchuk_structure() {
  const auto r = verify_grigorchuk({12, 0}, jobs());
  return {r.summary.at("levels_ok").get<bool>(), "levels 1..12"};
}

Outcome grigorchuk_displacement() {
  const auto r = verify_grigorchuk({12, 6}, jobs());
  const auto words = r.summary.at("nontrivial_words").get<std::size_t>();
  const auto failures = r.summary.at("displacement_failures").get<std::size_t>();
  return {r.passed && failures == 0 && words > 0,
          std::to_string(words) + " nontrivial words, " + std::to_string(failures) + " failures"};
}

Outcome gluing_bound() {
  const auto r = gluing_growth_bound({}, 0, jobs());
  return {r.passed && r.summary.at("gluings") == 200,
          std::to_string(r.summary.at("gluings").get<int>()) + " gluings, " +
              std::to_string(r.summary.at("failures").get<int>()) + " failures"};
}

Outcome cd_growth() {
  const auto r = cd_gluing_growth({}, 0, jobs());
  char buf[96];
  std::snprintf(buf, sizeof buf, "max slope %.4f over [16, 256]", r.summary.at("max_slope").get<double>());
  return {r.passed, buf};
}

Outcome faithfulness() {
  const auto r = faithfulness_trials({}, 0, jobs());
  return {r.passed && r.summary.at("trials") == 500,
          std::to_string(r.summary.at("trials").get<int>()) + " words, " +
              std::to_string(r.summary.at("failures").get<int>()) + " failures"};
}

Outcome lamplighter_suite() {
  bool ok = true;
  std::string detail;
  for (const auto& [p, d] : std::vector<std::pair<std::int64_t, int>>{{2, 1}, {3, 1}, {2, 2}}) {
    LamplighterParams params;
    params.p = p;
    params.d = d;
    const auto r = verify_lamplighter(params, jobs());
    ok = ok && r.passed && r.summary.at("certified_ratio").get<double>() > 0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%lld,%d) min %.4f", static_cast<long long>(p), d,
                  r.summary.at("min_ratio").get<double>());
    detail += (detail.empty() ? "" : "; ") + std::string(buf);
  }
  return {ok, detail};
}

Outcome houghton_suite() {
  const auto r = verify_houghton({}, jobs());
  char buf[96];
  std::snprintf(buf, sizeof buf, "pair slope %.4f", r.summary.at("pair_fit").at("slope").get<double>());
  return {r.passed, buf};
}

Outcome probe() {
  const auto r = probe_free_product({}, jobs());
  char buf[96];
  std::snprintf(buf, sizeof buf, "slope %.4f over R = 16..64", r.summary.at("fit").at("slope").get<double>());
  return {r.passed, buf};
}

Outcome partition() {
  std::vector<double> candidates;
  for (int c = 1; c <= 64; ++c) candidates.push_back(c);
  bool ok = true;
  for (double a : {1.0, 1.5, 2.0}) {
    ok = ok && gluing::check_partition_condition(gluing::GrowthFunction::power(a), candidates).holds;
  }
  const auto sqrt = gluing::check_partition_condition(gluing::GrowthFunction::power(0.5), candidates);
  ok = ok && !sqrt.holds && sqrt.failures.size() == candidates.size();
  std::string detail = "sqrt rejected";
  if (!sqrt.failures.empty()) {
    const auto& last = sqrt.failures.back();
    detail += ", C1 = 64 fails on " + std::to_string(last.tuple.front().second) + " ones";
  }
  return {ok, detail};
}

Outcome determinism() {
  const std::vector<std::string> configs = {
      R"({"kind": "verify", "target": "grigorchuk", "seed": 5})",
      R"({"kind": "verify", "target": "lamplighter", "seed": 5})",
      R"({"kind": "verify", "target": "houghton", "seed": 5})",
      R"({"kind": "verify", "target": "gluing", "seed": 5})",
      R"({"kind": "growth", "target": "lamplighter", "seed": 5, "params": {"m_max": 64, "n_max": 31}})",
      R"({"kind": "growth", "target": "grigorchuk", "seed": 5})",
      R"({"kind": "growth", "target": "houghton", "seed": 5})",
      R"({"kind": "growth", "target": "gluing-cd", "seed": 5})",
      R"({"kind": "probe", "target": "free-product", "seed": 5})",
      R"({"kind": "export", "target": "dot", "seed": 5, "params": {"graph": "gluing"}})",
  };
  const fs::path root = fs::temp_directory_path() / "schreier_acceptance";
  std::size_t files = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto config = parse_config_text(configs[i]);
    const fs::path a = root / ("a" + std::to_string(i));
    const fs::path b = root / ("b" + std::to_string(i));
    fs::remove_all(a);
    fs::remove_all(b);
    const auto ra = run_experiment(config, a.string(), 1);
    const auto rb = run_experiment(config, b.string(), jobs() + 1);
    if (ra.files.size() != rb.files.size()) return {false, "file lists differ for " + configs[i]};
    for (std::size_t k = 0; k < ra.files.size(); ++k) {
      if (slurp(ra.files[k]) != slurp(rb.files[k])) return {false, ra.files[k] + " differs"};
      ++files;
    }
  }
  fs::remove_all(root);
  return {true, std::to_string(files) + " artifacts identical across two runs"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "grigorchuk structure", 30, grigorchuk_structure},
      {2, "grigorchuk displacement", 60, grigorchuk_displacement},
      {3, "gluing growth bound", 60, gluing_bound},
      {4, "CD gluing growth", 60, cd_growth},
      {5, "faithfulness", 120, faithfulness},
      {6, "lamplighter", 60, lamplighter_suite},
      {7, "houghton growth", 60, houghton_suite},
      {8, "quadratic probe on H_2 * Z", 180, probe},
      {9, "partition condition", 10, partition},
      {10, "determinism", 600, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = out.ok && secs <= c.budget_s;
    if (!ok) ++failed;
    std::printf("criterion %2d %s  %-28s %7.2fs / %3.0fs  %s\n", c.id, ok ? "PASS" : "FAIL", c.name, secs, c.budget_s,
                out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
