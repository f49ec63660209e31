#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace schreier::experiment {

struct Artifact {
  std::string name;
  std::string text;                    // CSV or DOT
  std::optional<nlohmann::json> json;  // JSON artifacts get the config digest added
};

struct SuiteResult {
  bool passed = true;
  std::vector<Artifact> artifacts;
  nlohmann::json summary = nlohmann::json::object();
};

struct GrigorchukParams {
  int max_level = 12;
  int max_word = 6;
};
SuiteResult verify_grigorchuk(const GrigorchukParams& params, unsigned jobs);

struct LamplighterParams {
  std::int64_t p = 2;
  int d = 1;
  int max_length = 8;
  std::int64_t m_max = 16;
};
SuiteResult verify_lamplighter(const LamplighterParams& params, unsigned jobs);

struct HoughtonParams {
  int n_max = 1000;
  int pair_n_max = 64;
  int fit_lo = 8;
  double min_slope = 1.8;
};
SuiteResult verify_houghton(const HoughtonParams& params, unsigned jobs);

struct FaithfulnessParams {
  std::vector<std::string> factors{"grigorchuk", "Z", "Z/5", "H2"};
  int words = 500;
  int max_syllables = 6;
  int max_letters = 4;
  double commute_probability = 1.0 / 3.0;
  // Fixed commuting pairs (factor positions from 1); random per trial if unset.
  std::optional<std::vector<std::pair<int, int>>> commuting;
};
SuiteResult faithfulness_trials(const FaithfulnessParams& params, std::uint64_t seed, unsigned jobs);

struct GrowthBoundParams {
  std::vector<std::string> factors{"grigorchuk", "Z", "lamplighter"};
  int gluings = 200;
  int q_max = 6;
  int piece_cap = 256;
  int radius = 64;
};
SuiteResult gluing_growth_bound(const GrowthBoundParams& params, std::uint64_t seed, unsigned jobs);

struct CdGrowthParams {
  std::vector<std::string> factors{"grigorchuk", "Z"};
  int gluings = 4;
  int pieces = 16;
  int piece_cap = 256;
  int fit_lo = 16;
  int fit_hi = 256;
  double max_slope = 1.25;
};
SuiteResult cd_gluing_growth(const CdGrowthParams& params, std::uint64_t seed, unsigned jobs);

struct GluingParams {
  FaithfulnessParams faithfulness;
  GrowthBoundParams growth_bound;
  CdGrowthParams cd_growth;
};
SuiteResult verify_gluing(const GluingParams& params, std::uint64_t seed, unsigned jobs);

struct GrowthParams {
  std::string family;  // lamplighter, grigorchuk, houghton, gluing-cd
  std::int64_t p = 2;
  int d = 1;
  std::int64_t m_max = 0;  // 0: 2 n_max + 2
  int n_max = 64;
  int max_level = 12;
  int fit_lo = 8;
  double tolerance = 0.15;
  CdGrowthParams cd;
};
SuiteResult growth_family(const GrowthParams& params, std::uint64_t seed, unsigned jobs);

struct ProbeParams {
  std::string left = "houghton2";
  std::string right = "Z";
  std::vector<std::int64_t> radii{16, 24, 32, 48, 64};
  double c = 2.0;
  std::int64_t d = 2;
  double min_slope = 1.7;
};
SuiteResult probe_free_product(const ProbeParams& params, unsigned jobs);

struct ExportParams {
  std::string graph = "grigorchuk";  // grigorchuk, lamplighter, cycle, gluing
  int level = 4;
  std::int64_t p = 2;
  int d = 1;
  std::int64_t m = 4;
  std::vector<std::string> factors{"grigorchuk", "Z"};
  int q_max = 3;
  int piece_cap = 16;
};
SuiteResult export_dot(const ExportParams& params, std::uint64_t seed);

}  // namespace schreier::experiment
