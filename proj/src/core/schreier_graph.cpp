#include "core/schreier_graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "core/errors.hpp"

namespace schreier {

std::vector<PointKey> LazyGraph::adjacent(const PointKey& x) const {
  std::vector<PointKey> out;
  for (std::size_t s = 0; s < num_generators_; ++s) {
    PointKey y = neighbor_(x, s);
    if (y == x) continue;
    if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(std::move(y));
  }
  return out;
}

FiniteGraph::FiniteGraph(std::vector<PointKey> keys, std::size_t num_generators)
    : keys_(std::move(keys)),
      num_generators_(num_generators),
      targets_(keys_.size() * num_generators, 0) {
  index_.reserve(keys_.size());
  for (std::size_t v = 0; v < keys_.size(); ++v) {
    if (!index_.emplace(keys_[v], v).second) throw DomainError("duplicate vertex key: " + keys_[v]);
    for (std::size_t s = 0; s < num_generators_; ++s) targets_[v * num_generators_ + s] = v;
  }
}

std::optional<std::size_t> FiniteGraph::find(const PointKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteGraph::index_of(const PointKey& key) const {
  auto v = find(key);
  if (!v) throw DomainError("point not in graph: " + key);
  return *v;
}

void FiniteGraph::set_target(std::size_t v, std::size_t s, std::size_t target) {
  targets_[v * num_generators_ + s] = target;
  adjacency_ready_ = false;
}

void FiniteGraph::build_adjacency() const {
  adjacency_.assign(keys_.size(), {});
  for (std::size_t v = 0; v < keys_.size(); ++v) {
    auto& adj = adjacency_[v];
    for (std::size_t s = 0; s < num_generators_; ++s) {
      std::size_t w = targets_[v * num_generators_ + s];
      if (w == v) continue;
      adj.push_back(static_cast<std::uint32_t>(w));
    }
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  adjacency_ready_ = true;
}

const std::vector<std::uint32_t>& FiniteGraph::adjacent(std::size_t v) const {
  if (!adjacency_ready_) build_adjacency();
  return adjacency_[v];
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> FiniteGraph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t v = 0; v < size(); ++v) {
    for (std::uint32_t w : adjacent(v)) {
      if (v < w) out.emplace_back(static_cast<std::uint32_t>(v), w);
    }
  }
  return out;
}

LazyGraph FiniteGraph::as_lazy() const {
  return LazyGraph(num_generators_, [this](const PointKey& x, std::size_t s) {
    return keys_[target(index_of(x), s)];
  });
}

std::vector<BallPoint> ball(const LazyGraph& graph, const PointKey& x, std::int64_t radius) {
  std::vector<BallPoint> out;
  if (radius < 0) return out;
  std::unordered_set<PointKey> seen{x};
  out.push_back({x, 0});
  for (std::size_t head = 0; head < out.size(); ++head) {
    if (out[head].distance == radius) continue;
    const std::int64_t next = out[head].distance + 1;
    const PointKey current = out[head].point;
    for (std::size_t s = 0; s < graph.num_generators(); ++s) {
      PointKey y = graph.neighbor(current, s);
      if (seen.insert(y).second) out.push_back({std::move(y), next});
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::int64_t>> ball(const FiniteGraph& graph, std::size_t x,
                                                       std::int64_t radius) {
  std::vector<std::pair<std::size_t, std::int64_t>> out;
  if (radius < 0) return out;
  std::vector<char> seen(graph.size(), 0);
  seen[x] = 1;
  out.emplace_back(x, 0);
  for (std::size_t head = 0; head < out.size(); ++head) {
    auto [v, dist] = out[head];
    if (dist == radius) continue;
    for (std::uint32_t w : graph.adjacent(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        out.emplace_back(w, dist + 1);
      }
    }
  }
  return out;
}

namespace {

std::vector<std::uint64_t> profile_from_counts(std::vector<std::uint64_t> per_shell,
                                               std::int64_t radius) {
  std::vector<std::uint64_t> profile(static_cast<std::size_t>(radius) + 1, 0);
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    if (k < per_shell.size()) total += per_shell[k];
    profile[k] = total;
  }
  return profile;
}

}  // namespace

std::vector<std::uint64_t> ball_profile(const LazyGraph& graph, const PointKey& x,
                                        std::int64_t radius, std::size_t size_cap) {
  if (radius < 0) throw DomainError("negative radius");
  std::vector<std::uint64_t> shells;
  std::unordered_set<PointKey> seen{x};
  std::vector<PointKey> frontier{x};
  shells.push_back(1);
  for (std::int64_t k = 1; k <= radius && !frontier.empty(); ++k) {
    std::vector<PointKey> next;
    for (const auto& p : frontier) {
      for (std::size_t s = 0; s < graph.num_generators(); ++s) {
        PointKey y = graph.neighbor(p, s);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    if (size_cap != 0 && seen.size() > size_cap) {
      throw CapExceeded("ball exceeded size cap " + std::to_string(size_cap));
    }
    shells.push_back(next.size());
    frontier = std::move(next);
  }
  return profile_from_counts(std::move(shells), radius);
}

std::vector<std::uint64_t> ball_profile(const FiniteGraph& graph, std::size_t x,
                                        std::int64_t radius) {
  if (radius < 0) throw DomainError("negative radius");
  std::vector<std::uint64_t> shells;
  for (const auto& [v, dist] : ball(graph, x, radius)) {
    if (static_cast<std::size_t>(dist) >= shells.size()) shells.resize(static_cast<std::size_t>(dist) + 1, 0);
    ++shells[static_cast<std::size_t>(dist)];
  }
  return profile_from_counts(std::move(shells), radius);
}

std::vector<std::int64_t> distances_from(const FiniteGraph& graph, std::size_t x) {
  std::vector<std::int64_t> dist(graph.size(), kUnreachable);
  std::vector<std::uint32_t> queue;
  queue.reserve(graph.size());
  dist[x] = 0;
  queue.push_back(static_cast<std::uint32_t>(x));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint32_t v = queue[head];
    for (std::uint32_t w : graph.adjacent(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::int64_t distance(const LazyGraph& graph, const PointKey& x, const PointKey& y,
                      std::int64_t max_radius) {
  if (x == y) return 0;
  std::unordered_set<PointKey> seen{x};
  std::vector<PointKey> frontier{x};
  for (std::int64_t k = 1; k <= max_radius && !frontier.empty(); ++k) {
    std::vector<PointKey> next;
    for (const auto& p : frontier) {
      for (std::size_t s = 0; s < graph.num_generators(); ++s) {
        PointKey z = graph.neighbor(p, s);
        if (z == y) return k;
        if (seen.insert(z).second) next.push_back(std::move(z));
      }
    }
    frontier = std::move(next);
  }
  return kUnreachable;
}

FiniteGraph materialize_component(const LazyGraph& graph, const PointKey& x, std::size_t size_cap) {
  std::vector<PointKey> order{x};
  std::unordered_map<PointKey, std::size_t> index{{x, 0}};
  std::vector<std::vector<std::size_t>> targets;
  for (std::size_t head = 0; head < order.size(); ++head) {
    std::vector<std::size_t> row(graph.num_generators());
    for (std::size_t s = 0; s < graph.num_generators(); ++s) {
      PointKey y = graph.neighbor(order[head], s);
      auto [it, inserted] = index.emplace(y, order.size());
      if (inserted) {
        if (order.size() >= size_cap) {
          throw CapExceeded("component exceeds size cap " + std::to_string(size_cap));
        }
        order.push_back(std::move(y));
      }
      row[s] = it->second;
    }
    targets.push_back(std::move(row));
  }
  FiniteGraph out(order, graph.num_generators());
  for (std::size_t v = 0; v < targets.size(); ++v) {
    for (std::size_t s = 0; s < graph.num_generators(); ++s) out.set_target(v, s, targets[v][s]);
  }
  return out;
}

std::int64_t eccentricity(const FiniteGraph& graph, std::size_t x) {
  std::int64_t ecc = 0;
  for (std::int64_t d : distances_from(graph, x)) {
    if (d != kUnreachable) ecc = std::max(ecc, d);
  }
  return ecc;
}

std::int64_t component_diameter(const FiniteGraph& graph, std::size_t x) {
  const auto from_x = distances_from(graph, x);
  std::int64_t diam = 0;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (from_x[v] == kUnreachable) continue;
    diam = std::max(diam, eccentricity(graph, v));
  }
  return diam;
}

std::int64_t component_diameter(const LazyGraph& graph, const PointKey& x, std::size_t size_cap) {
  FiniteGraph component = materialize_component(graph, x, size_cap);
  return component_diameter(component, 0);
}

std::string to_dot(const FiniteGraph& graph, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  for (std::size_t v = 0; v < graph.size(); ++v) out << "  \"" << graph.key(v) << "\";\n";
  for (std::size_t v = 0; v < graph.size(); ++v) {
    for (std::size_t s = 0; s < graph.num_generators(); ++s) {
      std::size_t w = graph.target(v, s);
      if (w == v) continue;
      out << "  \"" << graph.key(v) << "\" -> \"" << graph.key(w) << "\" [label=\"" << s << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace schreier
