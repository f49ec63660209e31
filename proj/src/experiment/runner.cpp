#include "experiment/runner.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "core/errors.hpp"
#include "experiment/params.hpp"
#include "experiment/suites.hpp"

namespace schreier::experiment {

namespace {

constexpr std::int64_t kBig = std::numeric_limits<std::int32_t>::max();

FaithfulnessParams read_faithfulness(ParamReader r) {
  FaithfulnessParams p;
  p.factors = r.texts("factors", p.factors);
  p.words = static_cast<int>(r.integer("words", p.words, 1, kBig));
  p.max_syllables = static_cast<int>(r.integer("max_syllables", p.max_syllables, 1, 64));
  p.max_letters = static_cast<int>(r.integer("max_letters", p.max_letters, 1, 64));
  p.commute_probability = r.number("commute_probability", p.commute_probability, 0.0, 1.0);
  if (r.has("commuting")) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [a, b] : r.pairs("commuting", 1, static_cast<std::int64_t>(p.factors.size()))) {
      pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    p.commuting = pairs;
  }
  r.finish();
  return p;
}

GrowthBoundParams read_growth_bound(ParamReader r) {
  GrowthBoundParams p;
  p.factors = r.texts("factors", p.factors);
  p.gluings = static_cast<int>(r.integer("gluings", p.gluings, 1, kBig));
  p.q_max = static_cast<int>(r.integer("q_max", p.q_max, 1, 4096));
  p.piece_cap = static_cast<int>(r.integer("piece_cap", p.piece_cap, 2, 1 << 20));
  p.radius = static_cast<int>(r.integer("radius", p.radius, 0, 1 << 20));
  r.finish();
  return p;
}

CdGrowthParams read_cd(ParamReader r) {
  CdGrowthParams p;
  p.factors = r.texts("factors", p.factors);
  p.gluings = static_cast<int>(r.integer("gluings", p.gluings, 1, kBig));
  p.pieces = static_cast<int>(r.integer("pieces", p.pieces, 1, 4096));
  p.piece_cap = static_cast<int>(r.integer("piece_cap", p.piece_cap, 2, 1 << 20));
  p.fit_lo = static_cast<int>(r.integer("fit_lo", p.fit_lo, 1, 1 << 20));
  p.fit_hi = static_cast<int>(r.integer("fit_hi", p.fit_hi, 2, 1 << 20));
  p.max_slope = r.number("max_slope", p.max_slope, 0.0, 100.0);
  r.finish();
  if (p.fit_hi <= p.fit_lo) throw ConfigError(std::string("params: fit_hi must exceed fit_lo"));
  return p;
}

SuiteResult dispatch(const ExperimentConfig& c, unsigned jobs) {
  ParamReader r(c.params, "params");
  if (c.kind == "verify") {
    if (c.target == "grigorchuk") {
      GrigorchukParams p;
      p.max_level = static_cast<int>(r.integer("max_level", p.max_level, 1, 16));
      p.max_word = static_cast<int>(r.integer("max_word", p.max_word, 0, 12));
      r.finish();
      return verify_grigorchuk(p, jobs);
    }
    if (c.target == "lamplighter") {
      LamplighterParams p;
      p.p = r.integer("p", p.p, 2, 1 << 16);
      p.d = static_cast<int>(r.integer("d", p.d, 1, 4));
      p.max_length = static_cast<int>(r.integer("max_length", p.max_length, 1, 16));
      p.m_max = r.integer("m_max", p.m_max, 2, 1 << 16);
      r.finish();
      return verify_lamplighter(p, jobs);
    }
    if (c.target == "houghton") {
      HoughtonParams p;
      p.n_max = static_cast<int>(r.integer("n_max", p.n_max, 1, 1 << 20));
      p.pair_n_max = static_cast<int>(r.integer("pair_n_max", p.pair_n_max, 1, 4096));
      p.fit_lo = static_cast<int>(r.integer("fit_lo", p.fit_lo, 1, 4096));
      p.min_slope = r.number("min_slope", p.min_slope, 0.0, 100.0);
      r.finish();
      if (p.pair_n_max <= p.fit_lo) throw ConfigError("params.fit_lo: must be below pair_n_max");
      return verify_houghton(p, jobs);
    }
    if (c.target == "gluing") {
      GluingParams p;
      p.faithfulness = read_faithfulness(r.child("faithfulness"));
      p.growth_bound = read_growth_bound(r.child("growth_bound"));
      p.cd_growth = read_cd(r.child("cd_growth"));
      r.finish();
      return verify_gluing(p, c.seed, jobs);
    }
    throw ConfigError("target: unknown verify target " + c.target);
  }
  if (c.kind == "growth") {
    GrowthParams p;
    p.family = c.target;
    p.p = r.integer("p", p.p, 2, 1 << 16);
    p.d = static_cast<int>(r.integer("d", p.d, 1, 4));
    p.n_max = static_cast<int>(r.integer("n_max", p.n_max, 2, 1 << 20));
    p.m_max = r.integer("m_max", p.m_max, 0, 1 << 20);
    p.max_level = static_cast<int>(r.integer("max_level", p.max_level, 1, 16));
    p.fit_lo = static_cast<int>(r.integer("fit_lo", p.fit_lo, 1, 1 << 20));
    p.tolerance = r.number("tolerance", p.tolerance, 0.0, 10.0);
    p.cd = read_cd(r.child("cd"));
    r.finish();
    if (p.m_max != 0 && p.m_max < 2) throw ConfigError("params.m_max: must be 0 or at least 2");
    return growth_family(p, c.seed, jobs);
  }
  if (c.kind == "probe") {
    if (c.target != "free-product") throw ConfigError("target: unknown probe target " + c.target);
    ProbeParams p;
    p.left = r.text("left", p.left);
    p.right = r.text("right", p.right);
    p.radii = r.integers("R", p.radii, 1, 4096);
    p.c = r.number("C", p.c, 1.0, 1e6);
    p.d = r.integer("D", p.d, 1, 1 << 16);
    p.min_slope = r.number("min_slope", p.min_slope, 0.0, 100.0);
    r.finish();
    return probe_free_product(p, jobs);
  }
  if (c.kind == "export") {
    if (c.target != "dot") throw ConfigError("target: unknown export target " + c.target);
    ExportParams p;
    p.graph = r.text("graph", p.graph);
    p.level = static_cast<int>(r.integer("level", p.level, 1, 16));
    p.p = r.integer("p", p.p, 2, 1 << 16);
    p.d = static_cast<int>(r.integer("d", p.d, 1, 4));
    p.m = r.integer("m", p.m, 1, 1 << 16);
    p.factors = r.texts("factors", p.factors);
    p.q_max = static_cast<int>(r.integer("q_max", p.q_max, 1, 4096));
    p.piece_cap = static_cast<int>(r.integer("piece_cap", p.piece_cap, 2, 1 << 20));
    r.finish();
    return export_dot(p, c.seed);
  }
  throw ConfigError("kind: must be verify, growth, probe or export");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ConfigError("cannot write " + path.string());
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& config) {
  if (!config.is_object()) throw ConfigError("config: must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, value] : config.items()) {
    if (key != "kind" && key != "target" && key != "seed" && key != "params" && key != "out") {
      throw ConfigError(key + ": unknown field");
    }
  }
  for (const char* key : {"kind", "target"}) {
    if (!config.contains(key) || !config.at(key).is_string()) throw ConfigError(std::string(key) + ": required string");
  }
  c.kind = config.at("kind").get<std::string>();
  c.target = config.at("target").get<std::string>();
  if (!config.contains("seed")) throw ConfigError("seed: required");
  const auto& seed = config.at("seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
    throw ConfigError("seed: must be an unsigned 64-bit integer");
  }
  c.seed = seed.get<std::uint64_t>();
  if (config.contains("params")) {
    if (!config.at("params").is_object()) throw ConfigError("params: must be an object");
    c.params = config.at("params");
  }
  if (config.contains("out")) {
    if (!config.at("out").is_string()) throw ConfigError("out: must be a string");
    c.out = config.at("out").get<std::string>();
  }
  c.canonical = {{"kind", c.kind}, {"target", c.target}, {"seed", c.seed}, {"params", c.params}};
  return c;
}

ExperimentConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

std::string config_digest(const ExperimentConfig& config) {
  const std::string text = config.canonical.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

RunResult run_experiment(const ExperimentConfig& config, const std::string& out_dir, unsigned jobs) {
  RunResult run;
  run.digest = config_digest(config);
  const SuiteResult suite = dispatch(config, std::max(1u, jobs));

  const std::filesystem::path dir = !out_dir.empty() ? out_dir : (!config.out.empty() ? config.out : ".");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("out: cannot create " + dir.string() + ": " + ec.message());

  for (const auto& a : suite.artifacts) {
    std::string text = a.text;
    if (a.json) {
      nlohmann::json j = *a.json;
      j["config_digest"] = run.digest;
      text = j.dump(2) + "\n";
    }
    write_file(dir / a.name, text);
    run.files.push_back((dir / a.name).string());
  }
  run.passed = suite.passed;
  run.summary = {{"config", config.canonical},
                 {"config_digest", run.digest},
                 {"passed", suite.passed},
                 {"exit_code", suite.passed ? kExitOk : kExitVerification},
                 {"results", suite.summary}};
  write_file(dir / "summary.json", run.summary.dump(2) + "\n");
  run.files.push_back((dir / "summary.json").string());
  return run;
}

int exit_code_for(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const ConfigError&) {
    return kExitConfig;
  } catch (const DomainError&) {
    return kExitConfig;
  } catch (const CapabilityError&) {
    return kExitConfig;
  } catch (const VerificationError&) {
    return kExitVerification;
  } catch (const CapExceeded&) {
    return kExitResourceCap;
  } catch (...) {
    return kExitInternal;
  }
}

}  // namespace schreier::experiment
