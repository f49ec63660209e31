#include "lamplighter/lamplighter.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

#include "core/errors.hpp"

namespace schreier::lamplighter {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

GeneratorList make_generators(std::int64_t p, int d) {
  std::vector<Generator> gens;
  if (p == 2) {
    gens.push_back({"l", 0});
  } else {
    gens.push_back({"l", 1});
    gens.push_back({"L", 0});
  }
  const int base = static_cast<int>(gens.size());
  for (int i = 0; i < d; ++i) {
    const int plus = base + 2 * i;
    gens.push_back({"t" + std::to_string(i + 1), plus + 1});
    gens.push_back({"T" + std::to_string(i + 1), plus});
  }
  return GeneratorList(std::move(gens));
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

std::int64_t l1_norm(const Vec& v) {
  std::int64_t n = 0;
  for (auto x : v) n += std::llabs(x);
  return n;
}

Group::Group(std::int64_t p, int d) : p_(p), d_(d), gens_(make_generators(p < 2 ? 2 : p, d < 1 ? 1 : d)) {
  if (p < 2) throw DomainError("lamplighter needs p >= 2");
  if (d < 1) throw DomainError("lamplighter needs d >= 1");
}

Element Group::identity() const { return Element{{}, Vec(static_cast<std::size_t>(d_), 0)}; }

Element Group::multiply(const Element& g, const Element& h) const {
  Element out;
  out.shift = g.shift;
  for (int i = 0; i < d_; ++i) out.shift[static_cast<std::size_t>(i)] += h.shift[static_cast<std::size_t>(i)];
  out.lamps = h.lamps;
  for (const auto& [x, value] : g.lamps) {
    Vec y = x;
    for (int i = 0; i < d_; ++i) y[static_cast<std::size_t>(i)] -= h.shift[static_cast<std::size_t>(i)];
    const std::int64_t sum = mod(out.lamps[y] + value, p_);
    if (sum == 0) {
      out.lamps.erase(y);
    } else {
      out.lamps[y] = sum;
    }
  }
  return out;
}

Element Group::inverse(const Element& g) const {
  Element out;
  out.shift = g.shift;
  for (auto& x : out.shift) x = -x;
  for (const auto& [x, value] : g.lamps) {
    Vec y = x;
    for (int i = 0; i < d_; ++i) y[static_cast<std::size_t>(i)] += g.shift[static_cast<std::size_t>(i)];
    out.lamps[y] = mod(-value, p_);
  }
  return out;
}

Element Group::generator(int s) const {
  Element out = identity();
  const int lamp_count = p_ == 2 ? 1 : 2;
  if (s < lamp_count) {
    out.lamps[Vec(static_cast<std::size_t>(d_), 0)] = s == 0 ? 1 : p_ - 1;
    return out;
  }
  const int axis = (s - lamp_count) / 2;
  if (axis >= d_) throw DomainError("bad lamplighter generator index");
  out.shift[static_cast<std::size_t>(axis)] = ((s - lamp_count) % 2 == 0) ? 1 : -1;
  return out;
}

Element Group::evaluate(const Word& w) const {
  Element out = identity();
  for (int s : w) out = multiply(out, generator(s));
  return out;
}

CosetPoint Group::project(const Element& g, std::int64_t m) const {
  if (m < 2) throw DomainError("project needs m >= 2");
  CosetPoint out{0, Vec(static_cast<std::size_t>(d_), 0), m};
  for (const auto& [x, value] : g.lamps) {
    const bool on_lattice = std::all_of(x.begin(), x.end(), [m](std::int64_t c) { return mod(c, m) == 0; });
    if (on_lattice) out.lamp = mod(out.lamp + value, p_);
  }
  for (int i = 0; i < d_; ++i) out.torus[static_cast<std::size_t>(i)] = mod(g.shift[static_cast<std::size_t>(i)], m);
  return out;
}

CosetPoint Group::coset_act(const Element& g, const CosetPoint& x) const {
  if (x.modulus < 2 || static_cast<int>(x.torus.size()) != d_) throw DomainError("modulus mismatch");
  const std::int64_t m = x.modulus;
  CosetPoint out = x;
  for (const auto& [y, value] : g.lamps) {
    bool same_class = true;
    for (int i = 0; i < d_ && same_class; ++i) {
      same_class = mod(y[static_cast<std::size_t>(i)], m) == x.torus[static_cast<std::size_t>(i)];
    }
    if (same_class) out.lamp = mod(out.lamp + value, p_);
  }
  for (int i = 0; i < d_; ++i) {
    out.torus[static_cast<std::size_t>(i)] = mod(x.torus[static_cast<std::size_t>(i)] + g.shift[static_cast<std::size_t>(i)], m);
  }
  return out;
}

CosetPoint Group::act_generator(int s, const CosetPoint& x) const {
  CosetPoint out = x;
  const int lamp_count = p_ == 2 ? 1 : 2;
  if (s < lamp_count) {
    const bool at_origin = std::all_of(x.torus.begin(), x.torus.end(), [](std::int64_t c) { return c == 0; });
    if (at_origin) out.lamp = mod(x.lamp + (s == 0 ? 1 : -1), p_);
    return out;
  }
  const auto axis = static_cast<std::size_t>((s - lamp_count) / 2);
  const std::int64_t step = ((s - lamp_count) % 2 == 0) ? 1 : -1;
  out.torus[axis] = mod(x.torus[axis] + step, x.modulus);
  return out;
}

std::string Group::key(const CosetPoint& x) const {
  std::string out = std::to_string(x.lamp) + ";";
  for (std::size_t i = 0; i < x.torus.size(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(x.torus[i]);
  }
  return out;
}

CosetPoint Group::parse_key(const PointKey& key, std::int64_t m) const {
  CosetPoint out{0, {}, m};
  const auto semi = key.find(';');
  if (semi == std::string::npos) throw DomainError("bad lamplighter point key: " + key);
  out.lamp = std::stoll(key.substr(0, semi));
  std::stringstream rest(key.substr(semi + 1));
  std::string part;
  while (std::getline(rest, part, ',')) out.torus.push_back(std::stoll(part));
  if (static_cast<int>(out.torus.size()) != d_) throw DomainError("bad lamplighter point key: " + key);
  return out;
}

std::string Group::format(const Element& g) const {
  std::ostringstream out;
  out << "(";
  bool first = true;
  for (const auto& [x, value] : g.lamps) {
    if (!first) out << "+";
    first = false;
    out << value << "@[";
    for (std::size_t i = 0; i < x.size(); ++i) out << (i ? "," : "") << x[i];
    out << "]";
  }
  if (first) out << "0";
  out << "; [";
  for (std::size_t i = 0; i < g.shift.size(); ++i) out << (i ? "," : "") << g.shift[i];
  out << "])";
  return out.str();
}

namespace {

CosetPoint point_of_index(const Group& group, std::int64_t m, std::size_t index) {
  const std::int64_t torus_size = ipow(m, group.d());
  CosetPoint x{static_cast<std::int64_t>(index) / torus_size, Vec(static_cast<std::size_t>(group.d()), 0), m};
  std::int64_t rest = static_cast<std::int64_t>(index) % torus_size;
  for (int i = 0; i < group.d(); ++i) {
    x.torus[static_cast<std::size_t>(i)] = rest % m;
    rest /= m;
  }
  return x;
}

std::size_t index_of_point(const Group& group, const CosetPoint& x) {
  std::int64_t torus_index = 0;
  for (int i = group.d() - 1; i >= 0; --i) torus_index = torus_index * x.modulus + x.torus[static_cast<std::size_t>(i)];
  return static_cast<std::size_t>(x.lamp * ipow(x.modulus, group.d()) + torus_index);
}

}  // namespace

FiniteGraph build_X_m(const Group& group, std::int64_t m, std::size_t size_cap) {
  if (m < 2) throw DomainError("X_m needs m >= 2");
  const std::int64_t torus_size = ipow(m, group.d());
  const std::int64_t size = group.p() * torus_size;
  if (size <= 0 || static_cast<std::size_t>(size) > size_cap) {
    throw CapExceeded("|X_m| = p*m^d exceeds size cap " + std::to_string(size_cap));
  }
  std::vector<PointKey> keys;
  keys.reserve(static_cast<std::size_t>(size));
  for (std::size_t v = 0; v < static_cast<std::size_t>(size); ++v) keys.push_back(group.key(point_of_index(group, m, v)));
  FiniteGraph graph(std::move(keys), group.generators().size());
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const CosetPoint x = point_of_index(group, m, v);
    for (std::size_t s = 0; s < group.generators().size(); ++s) {
      graph.set_target(v, s, index_of_point(group, group.act_generator(static_cast<int>(s), x)));
    }
  }
  return graph;
}

bool verify_structure(const Group& group, std::int64_t m, const FiniteGraph& graph) {
  const std::int64_t torus_size = ipow(m, group.d());
  if (static_cast<std::int64_t>(graph.size()) != group.p() * torus_size) return false;
  const std::size_t lamp_count = group.p() == 2 ? 1 : 2;

  // Union-find over translation edges only.
  std::vector<std::size_t> parent(graph.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const CosetPoint x = point_of_index(group, m, v);
    const bool at_origin = std::all_of(x.torus.begin(), x.torus.end(), [](std::int64_t c) { return c == 0; });
    for (std::size_t s = 0; s < lamp_count; ++s) {
      const CosetPoint y = point_of_index(group, m, graph.target(v, s));
      if (y.torus != x.torus) return false;
      if (!at_origin && y.lamp != x.lamp) return false;
      if (at_origin && y.lamp != mod(x.lamp + (s == 0 ? 1 : -1), group.p())) return false;
    }
    for (int i = 0; i < group.d(); ++i) {
      for (int sign = 0; sign < 2; ++sign) {
        const std::size_t s = lamp_count + static_cast<std::size_t>(2 * i + sign);
        const std::size_t w = graph.target(v, s);
        const CosetPoint y = point_of_index(group, m, w);
        if (y.lamp != x.lamp) return false;
        for (int j = 0; j < group.d(); ++j) {
          const std::int64_t expected =
              mod(x.torus[static_cast<std::size_t>(j)] + (j == i ? (sign == 0 ? 1 : -1) : 0), m);
          if (y.torus[static_cast<std::size_t>(j)] != expected) return false;
        }
        parent[find(v)] = find(w);
      }
    }
  }
  std::map<std::size_t, std::size_t> component_sizes;
  for (std::size_t v = 0; v < graph.size(); ++v) ++component_sizes[find(v)];
  if (static_cast<std::int64_t>(component_sizes.size()) != group.p()) return false;
  for (const auto& [root, count] : component_sizes) {
    if (static_cast<std::int64_t>(count) != torus_size) return false;
  }
  return true;
}

const FiniteGraph& CdOracle::graph(std::int64_t m) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = graphs_.find(m);
  if (it == graphs_.end()) it = graphs_.emplace(m, build_X_m(group_, m)).first;
  return it->second;
}

std::int64_t CdOracle::diameter(std::int64_t m) const {
  const FiniteGraph& g = graph(m);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = diameters_.find(m);
    if (it != diameters_.end()) return it->second;
  }
  const std::int64_t diam = component_diameter(g, 0);
  std::lock_guard<std::mutex> lock(mutex_);
  diameters_[m] = diam;
  return diam;
}

CdWitness CdOracle::witness(const Element& g) const {
  if (group_.is_identity(g)) throw DomainError("cd witness needs a nontrivial element");
  CdWitness out;
  const std::int64_t shift_norm = l1_norm(g.shift);
  if (shift_norm != 0) {
    out.m = 2 * shift_norm;
    out.point = CosetPoint{0, Vec(static_cast<std::size_t>(group_.d()), 0), out.m};
  } else {
    const Vec* far = nullptr;
    for (const auto& [x, value] : g.lamps) {
      if (far == nullptr || l1_norm(x) > l1_norm(*far)) far = &x;
    }
    out.m = std::max<std::int64_t>(2, 2 * l1_norm(*far) + 1);
    out.point = CosetPoint{0, *far, out.m};
    for (auto& c : out.point.torus) c = mod(c, out.m);
  }
  const FiniteGraph& xm = graph(out.m);
  const CosetPoint image = group_.coset_act(g, out.point);
  const auto dist = distances_from(xm, index_of_point(group_, out.point));
  out.displacement = dist[index_of_point(group_, image)];
  out.diameter = diameter(out.m);
  if (out.displacement == 0) throw VerificationError("cd witness point is fixed by " + group_.format(g));
  return out;
}

double certified_ratio(std::int64_t p, int d) {
  // min over nontrivial elements of word length <= 8 of the witness ratio,
  // recorded in tests/fixtures/lamplighter_cd_constants.json
  if (p == 2 && d == 1) return 1.0 / 3.0;
  if (p == 3 && d == 1) return 1.0 / 3.0;
  if (p == 2 && d == 2) return 1.0 / 5.0;
  throw DomainError("no certified controlled-diameter constant for p=" + std::to_string(p) +
                    ", d=" + std::to_string(d));
}

std::vector<std::pair<Element, int>> cayley_ball(const Group& group, int radius) {
  std::vector<std::pair<Element, int>> out{{group.identity(), 0}};
  std::set<Element> seen{group.identity()};
  std::vector<Element> gens;
  for (std::size_t s = 0; s < group.generators().size(); ++s) gens.push_back(group.generator(static_cast<int>(s)));
  for (std::size_t head = 0; head < out.size(); ++head) {
    if (out[head].second == radius) continue;
    const Element current = out[head].first;
    const int length = out[head].second;
    for (const auto& s : gens) {
      Element next = group.multiply(current, s);
      if (seen.insert(next).second) out.emplace_back(std::move(next), length + 1);
    }
  }
  return out;
}

RatioSearch search_min_ratio(const Group& group, int max_length) {
  CdOracle oracle(group);
  RatioSearch out;
  out.min_ratio = 1e300;
  for (const auto& [g, length] : cayley_ball(group, max_length)) {
    if (group.is_identity(g)) continue;
    ++out.elements;
    const double ratio = oracle.witness(g).ratio();
    if (ratio < out.min_ratio) {
      out.min_ratio = ratio;
      out.worst_element = group.format(g);
    }
  }
  return out;
}

LamplighterProvider::LamplighterProvider(std::int64_t p, int d) : group_(p, d), oracle_(group_) {}

std::string LamplighterProvider::name() const {
  return "Lamplighter(p=" + std::to_string(group_.p()) + ",d=" + std::to_string(group_.d()) + ")";
}

std::vector<PointKey> LamplighterProvider::orbit_points(OrbitId orbit) const {
  return build_X_m(group_, orbit).keys();
}

std::vector<OrbitId> LamplighterProvider::orbit_catalogue(std::size_t max_size) const {
  std::vector<OrbitId> out;
  for (std::int64_t m = 2; static_cast<std::size_t>(group_.p() * ipow(m, group_.d())) <= max_size; ++m) {
    out.push_back(m);
  }
  return out;
}

PointKey LamplighterProvider::orbit_root(OrbitId orbit) const {
  return group_.key(CosetPoint{0, Vec(static_cast<std::size_t>(group_.d()), 0), orbit});
}

PointKey LamplighterProvider::act(OrbitId orbit, const PointKey& x, int generator) const {
  return group_.key(group_.act_generator(generator, group_.parse_key(x, orbit)));
}

std::optional<MovedPoint> LamplighterProvider::moved_point(const Word& g) const {
  auto cp = controlled_point(g);
  if (!cp) return std::nullopt;
  return MovedPoint{cp->orbit, cp->point};
}

std::optional<ControlledPoint> LamplighterProvider::controlled_point(const Word& g) const {
  const Element e = group_.evaluate(g);
  if (group_.is_identity(e)) return std::nullopt;
  const CdWitness w = oracle_.witness(e);
  return ControlledPoint{w.m, group_.key(w.point),
                         static_cast<double>(w.diameter) / static_cast<double>(w.displacement)};
}

}  // namespace schreier::lamplighter
