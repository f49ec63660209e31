#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace schreier {

// Canonical serialized address of a point. Visited sets in every BFS are keyed
// on these strings.
using PointKey = std::string;

// Distance between points of distinct orbits.
inline constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();

// Schreier graph over a possibly infinite point domain, given by a neighbour
// function point x generator -> point. Loops (s x == x) are kept by the
// neighbour function but never contribute to distances.
class LazyGraph {
 public:
  using Neighbor = std::function<PointKey(const PointKey&, std::size_t)>;

  LazyGraph(std::size_t num_generators, Neighbor neighbor)
      : num_generators_(num_generators), neighbor_(std::move(neighbor)) {}

  std::size_t num_generators() const { return num_generators_; }
  PointKey neighbor(const PointKey& x, std::size_t s) const { return neighbor_(x, s); }
  // Distinct non-loop neighbours, in generator order.
  std::vector<PointKey> adjacent(const PointKey& x) const;

 private:
  std::size_t num_generators_;
  Neighbor neighbor_;
};

// Materialized Schreier graph on vertices 0..n-1 with canonical keys.
class FiniteGraph {
 public:
  FiniteGraph(std::vector<PointKey> keys, std::size_t num_generators);

  std::size_t size() const { return keys_.size(); }
  std::size_t num_generators() const { return num_generators_; }
  const PointKey& key(std::size_t v) const { return keys_[v]; }
  const std::vector<PointKey>& keys() const { return keys_; }
  std::optional<std::size_t> find(const PointKey& key) const;
  std::size_t index_of(const PointKey& key) const;

  void set_target(std::size_t v, std::size_t s, std::size_t target);
  std::size_t target(std::size_t v, std::size_t s) const { return targets_[v * num_generators_ + s]; }

  // Distinct non-loop neighbours of v, ascending.
  const std::vector<std::uint32_t>& adjacent(std::size_t v) const;
  // Undirected simple edge set, pairs (u, v) with u < v, sorted.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;
  std::size_t degree(std::size_t v) const { return adjacent(v).size(); }

  LazyGraph as_lazy() const;

 private:
  void build_adjacency() const;

  std::vector<PointKey> keys_;
  std::size_t num_generators_;
  std::vector<std::size_t> targets_;
  std::unordered_map<PointKey, std::size_t> index_;
  mutable std::vector<std::vector<std::uint32_t>> adjacency_;
  mutable bool adjacency_ready_ = false;
};

struct BallPoint {
  PointKey point;
  std::int64_t distance;
};

// Exact BFS ball, in BFS order (distance nondecreasing).
std::vector<BallPoint> ball(const LazyGraph& graph, const PointKey& x, std::int64_t radius);
std::vector<std::pair<std::size_t, std::int64_t>> ball(const FiniteGraph& graph, std::size_t x,
                                                       std::int64_t radius);

// profile[k] = |B(x, k)| for k = 0..radius.
std::vector<std::uint64_t> ball_profile(const LazyGraph& graph, const PointKey& x,
                                        std::int64_t radius, std::size_t size_cap = 0);
std::vector<std::uint64_t> ball_profile(const FiniteGraph& graph, std::size_t x,
                                        std::int64_t radius);

// Distances from x to every vertex (kUnreachable off the component).
std::vector<std::int64_t> distances_from(const FiniteGraph& graph, std::size_t x);

// d(x, y), or kUnreachable if y is not found within max_radius.
std::int64_t distance(const LazyGraph& graph, const PointKey& x, const PointKey& y,
                      std::int64_t max_radius);

// Connected component of x, materialized. Throws CapExceeded past size_cap.
FiniteGraph materialize_component(const LazyGraph& graph, const PointKey& x, std::size_t size_cap);

// Exact diameter of the component of x. Throws CapExceeded naming the cap when
// the component has more than size_cap points.
std::int64_t component_diameter(const LazyGraph& graph, const PointKey& x, std::size_t size_cap);
std::int64_t component_diameter(const FiniteGraph& graph, std::size_t x);
// Eccentricity of x in its component.
std::int64_t eccentricity(const FiniteGraph& graph, std::size_t x);

// DOT digraph: one node per vertex labelled by key, one edge x -> s x per
// non-loop generator application labelled by the generator index.
std::string to_dot(const FiniteGraph& graph, const std::string& name);

}  // namespace schreier
