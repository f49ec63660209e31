#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "core/provider.hpp"
#include "core/schreier_graph.hpp"

namespace schreier::lamplighter {

using Vec = std::vector<std::int64_t>;

// Element (f, u) of (Z/pZ) wr Z^d. `lamps` holds the nonzero values of f.
//
// Product: (f, u)(f', u') = (f(. + u') + f', u + u'). Under this law the map
// (f, u) -> (sum of f over mZ^d, u mod m) is constant on left cosets of H_m
// and identifies G/H_m with (Z/pZ) x (Z/mZ)^d.
struct Element {
  std::map<Vec, std::int64_t> lamps;
  Vec shift;

  bool operator==(const Element&) const = default;
  bool operator<(const Element& o) const {
    return shift != o.shift ? shift < o.shift : lamps < o.lamps;
  }
};

// Point (r, v) of X_m = (Z/pZ) x (Z/mZ)^d.
struct CosetPoint {
  std::int64_t lamp = 0;
  Vec torus;
  std::int64_t modulus = 0;

  bool operator==(const CosetPoint&) const = default;
};

std::int64_t l1_norm(const Vec& v);

class Group {
 public:
  Group(std::int64_t p, int d);

  std::int64_t p() const { return p_; }
  int d() const { return d_; }

  Element identity() const;
  Element multiply(const Element& g, const Element& h) const;
  Element inverse(const Element& g) const;
  bool is_identity(const Element& g) const { return g.lamps.empty() && l1_norm(g.shift) == 0; }

  // Generating list: lamp (and its inverse when p > 2), then +e_i, -e_i.
  const GeneratorList& generators() const { return gens_; }
  Element generator(int s) const;
  Element evaluate(const Word& w) const;

  CosetPoint project(const Element& g, std::int64_t m) const;
  CosetPoint coset_act(const Element& g, const CosetPoint& x) const;
  CosetPoint act_generator(int s, const CosetPoint& x) const;

  std::string key(const CosetPoint& x) const;
  CosetPoint parse_key(const PointKey& key, std::int64_t m) const;

  std::string format(const Element& g) const;

 private:
  std::int64_t p_;
  int d_;
  GeneratorList gens_;
};

inline constexpr std::size_t kDefaultSizeCap = std::size_t{1} << 22;

// Schreier graph of X_m with vertex index r * m^d + sum_i v_i m^i.
FiniteGraph build_X_m(const Group& group, std::int64_t m, std::size_t size_cap = kDefaultSizeCap);

// Removing lamp edges leaves p disjoint copies of the torus Cayley graph of
// (Z/mZ)^d, one per lamp value; the lamp generator moves only points over 0.
bool verify_structure(const Group& group, std::int64_t m, const FiniteGraph& graph);

struct CdWitness {
  std::int64_t m = 0;
  CosetPoint point;
  std::int64_t displacement = 0;
  std::int64_t diameter = 0;

  double ratio() const { return static_cast<double>(displacement) / static_cast<double>(diameter); }
};

// Controlled-diameter witness. Translation part v != 0: m = 2|v|, x = (0, 0).
// Otherwise u = a lamp position of maximal |u|, m = max(2, 2|u| + 1),
// x = (0, u mod m). Distances and diameters come from exact BFS.
class CdOracle {
 public:
  explicit CdOracle(const Group& group) : group_(group) {}
  CdWitness witness(const Element& g) const;
  std::int64_t diameter(std::int64_t m) const;

 private:
  const FiniteGraph& graph(std::int64_t m) const;

  Group group_;
  mutable std::mutex mutex_;
  mutable std::map<std::int64_t, FiniteGraph> graphs_;
  mutable std::map<std::int64_t, std::int64_t> diameters_;
};

// Frozen lower bound c on d(x, gx) / diam(X_m) for the witnesses above,
// established by exhaustive search over elements of word length <= 8.
// Throws DomainError for (p, d) pairs that were not certified.
double certified_ratio(std::int64_t p, int d);

// Distinct elements of word length <= radius, with their word lengths, in BFS
// order of the Cayley graph.
std::vector<std::pair<Element, int>> cayley_ball(const Group& group, int radius);

struct RatioSearch {
  double min_ratio = 0.0;
  std::size_t elements = 0;
  std::string worst_element;
};
RatioSearch search_min_ratio(const Group& group, int max_length);

class LamplighterProvider final : public ActionProvider {
 public:
  LamplighterProvider(std::int64_t p, int d);

  std::string name() const override;
  const GeneratorList& generators() const override { return group_.generators(); }
  const Group& group() const { return group_; }

  bool is_trivial(const Word& w) const override { return group_.is_identity(group_.evaluate(w)); }

  bool orbit_is_finite(OrbitId) const override { return true; }
  std::vector<PointKey> orbit_points(OrbitId orbit) const override;
  std::vector<OrbitId> orbit_catalogue(std::size_t max_size) const override;
  PointKey orbit_root(OrbitId orbit) const override;
  PointKey act(OrbitId orbit, const PointKey& x, int generator) const override;

  std::optional<MovedPoint> moved_point(const Word& g) const override;
  std::optional<ControlledPoint> controlled_point(const Word& g) const override;
  bool has_controlled_oracle() const override { return true; }

 private:
  Group group_;
  CdOracle oracle_;
};

}  // namespace schreier::lamplighter
