#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace schreier::experiment {

// Typed access to one JSON object of an experiment config. Every error names
// the full field path; finish() rejects keys that were never read.
class ParamReader {
 public:
  ParamReader(const nlohmann::json& object, std::string path);

  std::int64_t integer(const std::string& key, std::int64_t fallback, std::int64_t lo, std::int64_t hi);
  double number(const std::string& key, double fallback, double lo, double hi);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<std::int64_t> integers(const std::string& key, const std::vector<std::int64_t>& fallback,
                                     std::int64_t lo, std::int64_t hi);
  std::vector<std::string> texts(const std::string& key, const std::vector<std::string>& fallback);
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs(const std::string& key, std::int64_t lo, std::int64_t hi);
  // Reader for a nested object (empty when absent).
  ParamReader child(const std::string& key);
  bool has(const std::string& key) const { return object_.contains(key); }
  void finish() const;

 private:
  const nlohmann::json& object_;
  std::string path_;
  std::set<std::string> used_;
};

}  // namespace schreier::experiment
