#include "experiment/params.hpp"

#include "core/errors.hpp"

namespace schreier::experiment {

namespace {

const nlohmann::json& empty_object() {
  static const nlohmann::json empty = nlohmann::json::object();
  return empty;
}

}  // namespace

ParamReader::ParamReader(const nlohmann::json& object, std::string path)
    : object_(object.is_null() ? empty_object() : object), path_(std::move(path)) {
  if (!object_.is_object()) throw ConfigError(path_ + ": must be an object");
}

std::int64_t ParamReader::integer(const std::string& key, std::int64_t fallback, std::int64_t lo, std::int64_t hi) {
  used_.insert(key);
  const std::string where = path_ + "." + key;
  if (!object_.contains(key)) return fallback;
  const auto& v = object_.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + ": must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < lo || x > hi) {
    throw ConfigError(where + ": must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return x;
}

double ParamReader::number(const std::string& key, double fallback, double lo, double hi) {
  used_.insert(key);
  const std::string where = path_ + "." + key;
  if (!object_.contains(key)) return fallback;
  const auto& v = object_.at(key);
  if (!v.is_number()) throw ConfigError(where + ": must be a number");
  const auto x = v.get<double>();
  if (x < lo || x > hi) throw ConfigError(where + ": out of range");
  return x;
}

std::string ParamReader::text(const std::string& key, const std::string& fallback) {
  used_.insert(key);
  if (!object_.contains(key)) return fallback;
  const auto& v = object_.at(key);
  if (!v.is_string()) throw ConfigError(path_ + "." + key + ": must be a string");
  return v.get<std::string>();
}

std::vector<std::int64_t> ParamReader::integers(const std::string& key, const std::vector<std::int64_t>& fallback,
                                                std::int64_t lo, std::int64_t hi) {
  used_.insert(key);
  const std::string where = path_ + "." + key;
  if (!object_.contains(key)) return fallback;
  const auto& v = object_.at(key);
  if (!v.is_array() || v.empty()) throw ConfigError(where + ": must be a nonempty array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) throw ConfigError(where + "[" + std::to_string(i) + "]: must be an integer");
    const auto x = v[i].get<std::int64_t>();
    if (x < lo || x > hi) throw ConfigError(where + "[" + std::to_string(i) + "]: out of range");
    out.push_back(x);
  }
  return out;
}

std::vector<std::string> ParamReader::texts(const std::string& key, const std::vector<std::string>& fallback) {
  used_.insert(key);
  const std::string where = path_ + "." + key;
  if (!object_.contains(key)) return fallback;
  const auto& v = object_.at(key);
  if (!v.is_array() || v.empty()) throw ConfigError(where + ": must be a nonempty array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) throw ConfigError(where + "[" + std::to_string(i) + "]: must be a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> ParamReader::pairs(const std::string& key, std::int64_t lo,
                                                                     std::int64_t hi) {
  used_.insert(key);
  const std::string where = path_ + "." + key;
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  if (!object_.contains(key)) return out;
  const auto& v = object_.at(key);
  if (!v.is_array()) throw ConfigError(where + ": must be an array of [i, j] pairs");
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != 2 || !v[i][0].is_number_integer() || !v[i][1].is_number_integer()) {
      throw ConfigError(at + ": must be a pair of integers");
    }
    const auto a = v[i][0].get<std::int64_t>();
    const auto b = v[i][1].get<std::int64_t>();
    if (a < lo || a > hi || b < lo || b > hi) throw ConfigError(at + ": out of range");
    out.emplace_back(a, b);
  }
  return out;
}

ParamReader ParamReader::child(const std::string& key) {
  used_.insert(key);
  if (!object_.contains(key)) return ParamReader(empty_object(), path_ + "." + key);
  return ParamReader(object_.at(key), path_ + "." + key);
}

void ParamReader::finish() const {
  for (const auto& [key, value] : object_.items()) {
    if (used_.count(key) == 0) throw ConfigError(path_ + "." + key + ": unknown field");
  }
}

}  // namespace schreier::experiment
