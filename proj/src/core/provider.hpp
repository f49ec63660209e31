#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/schreier_graph.hpp"
#include "core/words.hpp"

namespace schreier {

// Provider-specific orbit parameter: a level, a modulus, a cycle length.
using OrbitId = std::int64_t;

struct MovedPoint {
  OrbitId orbit = 0;
  PointKey point;
};

// Output of a controlled-diameter oracle: an element g moves `point` of the
// finite orbit, and diam(orbit) <= constant * d(point, g point).
struct ControlledPoint {
  OrbitId orbit = 0;
  PointKey point;
  double constant = 0.0;
};

// Capability bundle of one factor group G_i and its G_i-set: word problem,
// generators, orbit catalogue, neighbour function, and moved-point oracles.
class ActionProvider {
 public:
  virtual ~ActionProvider() = default;

  virtual std::string name() const = 0;
  virtual const GeneratorList& generators() const = 0;

  virtual bool is_trivial(const Word& w) const = 0;
  // Shortest or canonical word for the same element; defaults to free
  // reduction.
  virtual Word normalize_word(const Word& w) const { return generators().free_reduce(w); }

  Word compose(const Word& u, const Word& v) const;
  Word invert(const Word& w) const { return generators().invert(w); }
  bool equal(const Word& u, const Word& v) const;

  virtual bool orbit_is_finite(OrbitId orbit) const = 0;
  // Point list of a finite orbit in canonical order.
  virtual std::vector<PointKey> orbit_points(OrbitId orbit) const = 0;
  // Finite orbits of at most max_size points (ascending), then infinite ones.
  virtual std::vector<OrbitId> orbit_catalogue(std::size_t max_size) const = 0;
  // A distinguished point, used as a BFS root and ladder origin.
  virtual PointKey orbit_root(OrbitId orbit) const = 0;

  virtual PointKey act(OrbitId orbit, const PointKey& x, int generator) const = 0;
  PointKey act_word(OrbitId orbit, const PointKey& x, const Word& w) const;

  LazyGraph orbit_graph(OrbitId orbit) const;
  FiniteGraph materialize_orbit(OrbitId orbit) const;

  // Some orbit and point moved by a nontrivial g; nullopt on the identity.
  virtual std::optional<MovedPoint> moved_point(const Word& g) const = 0;
  // Controlled-diameter oracle; providers without one return nullopt.
  virtual std::optional<ControlledPoint> controlled_point(const Word& /*g*/) const {
    return std::nullopt;
  }
  virtual bool has_controlled_oracle() const { return false; }
};

}  // namespace schreier
