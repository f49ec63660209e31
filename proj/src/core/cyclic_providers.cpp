#include "core/cyclic_providers.hpp"

#include <cstdlib>

#include "core/errors.hpp"

namespace schreier {

namespace {

std::int64_t parse_int(const PointKey& x) {
  char* end = nullptr;
  const long long v = std::strtoll(x.c_str(), &end, 10);
  if (end == x.c_str() || *end != '\0') throw DomainError("not an integer point: " + x);
  return v;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

IntegerProvider::IntegerProvider() : gens_({{"x", 1}, {"X", 0}}) {}

std::int64_t IntegerProvider::exponent_sum(const Word& w) {
  std::int64_t sum = 0;
  for (int g : w) sum += (g == 0) ? 1 : -1;
  return sum;
}

Word IntegerProvider::power(std::int64_t k) {
  return Word(static_cast<std::size_t>(std::llabs(k)), k >= 0 ? 0 : 1);
}

Word IntegerProvider::normalize_word(const Word& w) const { return power(exponent_sum(w)); }

std::vector<PointKey> IntegerProvider::orbit_points(OrbitId orbit) const {
  if (orbit < 1) throw DomainError("Z: orbit 0 is the infinite line");
  std::vector<PointKey> out;
  for (std::int64_t i = 0; i < orbit; ++i) out.push_back(std::to_string(i));
  return out;
}

std::vector<OrbitId> IntegerProvider::orbit_catalogue(std::size_t max_size) const {
  std::vector<OrbitId> out;
  for (std::size_t m = 2; m <= max_size; ++m) out.push_back(static_cast<OrbitId>(m));
  out.push_back(0);
  return out;
}

PointKey IntegerProvider::act(OrbitId orbit, const PointKey& x, int generator) const {
  const std::int64_t step = generator == 0 ? 1 : -1;
  const std::int64_t v = parse_int(x) + step;
  return std::to_string(orbit == 0 ? v : mod(v, orbit));
}

std::optional<MovedPoint> IntegerProvider::moved_point(const Word& g) const {
  auto cp = controlled_point(g);
  if (!cp) return std::nullopt;
  return MovedPoint{cp->orbit, cp->point};
}

std::optional<ControlledPoint> IntegerProvider::controlled_point(const Word& g) const {
  const std::int64_t k = exponent_sum(g);
  if (k == 0) return std::nullopt;
  return ControlledPoint{2 * std::llabs(k), "0", 1.0};
}

FiniteCyclicProvider::FiniteCyclicProvider(std::int64_t order)
    : order_(order), gens_(order == 2 ? GeneratorList({{"x", 0}}) : GeneratorList({{"x", 1}, {"X", 0}})) {
  if (order < 2) throw DomainError("Z/kZ needs k >= 2");
}

std::int64_t FiniteCyclicProvider::residue(const Word& w) const {
  std::int64_t sum = 0;
  for (int g : w) sum += (g == 0) ? 1 : -1;
  return mod(sum, order_);
}

bool FiniteCyclicProvider::is_trivial(const Word& w) const { return residue(w) == 0; }

Word FiniteCyclicProvider::normalize_word(const Word& w) const {
  const std::int64_t r = residue(w);
  if (order_ == 2) return Word(static_cast<std::size_t>(r), 0);
  // shortest representative: x^r or X^(k-r)
  if (2 * r <= order_) return Word(static_cast<std::size_t>(r), 0);
  return Word(static_cast<std::size_t>(order_ - r), 1);
}

std::vector<PointKey> FiniteCyclicProvider::orbit_points(OrbitId) const {
  std::vector<PointKey> out;
  for (std::int64_t i = 0; i < order_; ++i) out.push_back(std::to_string(i));
  return out;
}

std::vector<OrbitId> FiniteCyclicProvider::orbit_catalogue(std::size_t max_size) const {
  if (static_cast<std::size_t>(order_) > max_size) return {};
  return {order_};
}

PointKey FiniteCyclicProvider::act(OrbitId, const PointKey& x, int generator) const {
  const std::int64_t step = generator == 0 ? 1 : -1;
  return std::to_string(mod(parse_int(x) + step, order_));
}

std::optional<MovedPoint> FiniteCyclicProvider::moved_point(const Word& g) const {
  const std::int64_t r = residue(g);
  if (r == 0) return std::nullopt;
  return MovedPoint{order_, "0"};
}

std::optional<ControlledPoint> FiniteCyclicProvider::controlled_point(const Word& g) const {
  const std::int64_t r = residue(g);
  if (r == 0) return std::nullopt;
  const std::int64_t displacement = std::min(r, order_ - r);
  const std::int64_t diameter = order_ / 2;
  return ControlledPoint{order_, "0", static_cast<double>(diameter) / static_cast<double>(displacement)};
}

}  // namespace schreier
