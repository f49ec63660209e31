#include "growth/growth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "core/errors.hpp"
#include "core/provider.hpp"

namespace schreier::growth {

namespace {

void check_n_max(std::int64_t n_max) {
  if (n_max < 1) throw DomainError("vol tables need n_max >= 1");
}

void absorb(std::vector<std::uint64_t>& vol, const std::vector<std::uint64_t>& profile) {
  for (std::size_t k = 0; k < vol.size(); ++k) vol[k] = std::max(vol[k], profile[k]);
}

}  // namespace

GrowthTable vol_table(const FiniteGraph& graph, std::int64_t n_max) {
  check_n_max(n_max);
  GrowthTable table;
  table.vol.assign(static_cast<std::size_t>(n_max) + 1, 0);
  for (std::size_t v = 0; v < graph.size(); ++v) absorb(table.vol, ball_profile(graph, v, n_max));
  table.basepoints = graph.keys();
  table.exhaustive = true;
  return table;
}

GrowthTable vol_table(const FiniteGraph& graph, std::int64_t n_max, const std::vector<PointKey>& basepoints) {
  check_n_max(n_max);
  GrowthTable table;
  table.vol.assign(static_cast<std::size_t>(n_max) + 1, 0);
  for (const auto& x : basepoints) {
    const auto v = graph.find(x);
    if (!v) throw DomainError("basepoint " + x + " is not in the graph");
    absorb(table.vol, ball_profile(graph, *v, n_max));
  }
  table.basepoints = basepoints;
  table.exhaustive = std::set<PointKey>(basepoints.begin(), basepoints.end()).size() == graph.size();
  return table;
}

GrowthTable vol_table(const LazyGraph& graph, std::int64_t n_max, const std::vector<PointKey>& basepoints,
                      std::size_t size_cap) {
  check_n_max(n_max);
  if (basepoints.empty()) throw DomainError("no basepoints");
  GrowthTable table;
  table.vol.assign(static_cast<std::size_t>(n_max) + 1, 0);
  for (const auto& x : basepoints) absorb(table.vol, ball_profile(graph, x, n_max, size_cap));
  table.basepoints = basepoints;
  return table;
}

GrowthTable merge_max(const GrowthTable& a, const GrowthTable& b) {
  GrowthTable out;
  out.vol.resize(std::max(a.vol.size(), b.vol.size()), 0);
  for (std::size_t k = 0; k < out.vol.size(); ++k) {
    if (k < a.vol.size()) out.vol[k] = std::max(out.vol[k], a.vol[k]);
    if (k < b.vol.size()) out.vol[k] = std::max(out.vol[k], b.vol[k]);
  }
  out.basepoints = a.basepoints;
  out.basepoints.insert(out.basepoints.end(), b.basepoints.begin(), b.basepoints.end());
  out.exhaustive = a.exhaustive && b.exhaustive;
  return out;
}

bool is_valid(const GrowthTable& table, std::size_t num_generators) {
  if (table.vol.empty() || table.vol[0] != 1) return false;
  double cap = 1.0;
  for (std::size_t k = 0; k < table.vol.size(); ++k) {
    if (k > 0 && table.vol[k] < table.vol[k - 1]) return false;
    if (static_cast<double>(table.vol[k]) > cap) return false;
    cap *= static_cast<double>(num_generators + 1);
  }
  return true;
}

std::string to_csv(const GrowthTable& table) {
  std::ostringstream out;
  out << "n,vol\n";
  for (std::size_t k = 0; k < table.vol.size(); ++k) out << k << "," << table.vol[k] << "\n";
  return out.str();
}

std::vector<PointKey> ladder_basepoints(const LazyGraph& graph, const PointKey& root, int levels) {
  std::vector<PointKey> out{root};
  if (levels <= 0) return out;
  const std::int64_t far = std::int64_t{1} << (levels - 1);
  std::map<std::int64_t, PointKey> smallest;
  for (const auto& [point, dist] : ball(graph, root, far)) {
    if ((dist & (dist - 1)) != 0 || dist == 0) continue;
    auto it = smallest.find(dist);
    if (it == smallest.end() || point < it->second) smallest[dist] = point;
  }
  for (const auto& [dist, point] : smallest) out.push_back(point);
  return out;
}

Fit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw DomainError("fit needs at least two points");
  const auto n = static_cast<double>(xs.size());
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= 0.0 || ys[i] <= 0.0) throw DomainError("log-log fit needs positive values");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DomainError("degenerate fit range");
  Fit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = xs.size();
  if (xs.size() > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
      rss += e * e;
    }
    fit.stderr_ = std::sqrt(rss / (n - 2.0) / sxx);
  }
  return fit;
}

Fit fit_exponent(const GrowthTable& table, std::int64_t lo, std::int64_t hi) {
  if (lo < 1 || hi <= lo || hi > table.n_max()) {
    throw DomainError("fit range [" + std::to_string(lo) + "," + std::to_string(hi) + "] is degenerate");
  }
  std::vector<double> xs, ys;
  for (std::int64_t n = lo; n <= hi; ++n) {
    const auto v = table.vol[static_cast<std::size_t>(n)];
    if (v < 1) throw DomainError("table entries must be >= 1");
    xs.push_back(static_cast<double>(n));
    ys.push_back(static_cast<double>(v));
  }
  return fit_loglog(xs, ys);
}

std::vector<std::vector<PointKey>> coarse_components(const std::vector<PointKey>& points, std::int64_t d,
                                                     const LazyGraph& graph) {
  std::vector<PointKey> sorted(points);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::unordered_map<PointKey, std::size_t> index;
  for (std::size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = i;
  std::vector<std::size_t> parent(sorted.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&parent](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (const auto& [y, dist] : ball(graph, sorted[i], d)) {
      auto it = index.find(y);
      if (it != index.end()) parent[find(i)] = find(it->second);
    }
  }
  std::map<std::size_t, std::vector<PointKey>> groups;
  for (std::size_t i = 0; i < sorted.size(); ++i) groups[find(i)].push_back(sorted[i]);
  std::vector<std::vector<PointKey>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Holds:
      return "holds";
    case Status::Fails:
      return "fails";
    case Status::Indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

namespace {

// Largest pairwise distance inside a set that is chained by steps <= step.
std::int64_t set_diameter(const std::vector<PointKey>& points, std::int64_t step, const LazyGraph& graph) {
  const std::int64_t bound = static_cast<std::int64_t>(points.size()) * std::max<std::int64_t>(step, 1);
  std::int64_t diam = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      diam = std::max(diam, distance(graph, points[i], points[j], bound));
    }
  }
  return diam;
}

std::int64_t set_distance(const std::vector<PointKey>& a, const std::vector<PointKey>& b, std::int64_t max_radius,
                          const LazyGraph& graph) {
  std::int64_t best = kUnreachable;
  const std::set<PointKey> targets(b.begin(), b.end());
  for (const auto& x : a) {
    for (const auto& [y, dist] : ball(graph, x, std::min(max_radius, best == kUnreachable ? max_radius : best))) {
      if (targets.count(y) != 0) best = std::min(best, dist);
    }
  }
  return best;
}

nlohmann::json flag_json(const Flag& f) { return {{"status", to_string(f.status)}, {"detail", f.detail}}; }

nlohmann::json params_json(const SparseParams& p) {
  return {{"C", p.c}, {"D", p.d}, {"R", p.r}, {"D1", p.d1()}, {"D2", p.d2()}};
}

}  // namespace

nlohmann::json SparseSupportReport::to_json() const {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : components) comps.push_back({{"points", c.points}, {"diameter", c.diameter}});
  nlohmann::json seps = nlohmann::json::array();
  for (const auto& row : separations) {
    nlohmann::json r = nlohmann::json::array();
    for (auto v : row) r.push_back(v == kUnreachable ? nlohmann::json(nullptr) : nlohmann::json(v));
    seps.push_back(r);
  }
  return {{"params", params_json(params)},
          {"support", support},
          {"components", comps},
          {"separations", seps},
          {"C1", flag_json(c1)},
          {"C2", flag_json(c2)},
          {"C3", flag_json(c3)},
          {"C4", flag_json(c4)}};
}

SparseSupportReport check_sparse_conditions(const LazyGraph& g_graph, const PointMap& g, const SparseParams& params,
                                            const std::vector<PointKey>& centers, std::int64_t radius,
                                            const GrowthTable& alpha) {
  if (params.c <= 0.0 || params.d < 0 || params.r < 1) throw DomainError("sparse parameters out of range");
  std::map<PointKey, std::int64_t> window;
  for (const auto& c : centers) {
    for (const auto& [x, dist] : ball(g_graph, c, radius)) {
      auto it = window.find(x);
      if (it == window.end() || dist < it->second) window[x] = dist;
    }
  }
  SparseSupportReport report;
  report.params = params;
  bool interior = true;
  for (const auto& [x, dist] : window) {
    if (g(x) == x) continue;
    report.support.push_back(x);
    if (dist > radius - (params.r + params.d)) interior = false;
  }
  if (report.support.empty()) throw DomainError("g has empty support on the window");

  report.c1 = {Status::Holds, "max displacement within D"};
  for (const auto& x : report.support) {
    if (distance(g_graph, x, g(x), params.d) == kUnreachable) {
      report.c1 = {Status::Fails, "d(x, gx) > D at " + x};
      break;
    }
  }

  for (auto& members : coarse_components(report.support, params.d, g_graph)) {
    Component c;
    c.diameter = set_diameter(members, params.d, g_graph);
    c.points = std::move(members);
    report.components.push_back(std::move(c));
  }

  report.c2 = {Status::Holds, "every component has diameter <= C"};
  for (const auto& c : report.components) {
    if (static_cast<double>(c.diameter) > params.c) {
      report.c2 = {Status::Fails, "component at " + c.points.front() + " has diameter " + std::to_string(c.diameter)};
      break;
    }
  }
  if (report.c2.status == Status::Holds && !interior) {
    report.c2 = {Status::Indeterminate, "support reaches the window margin"};
  }

  const std::size_t k = report.components.size();
  report.separations.assign(k, std::vector<std::int64_t>(k, 0));
  report.c3 = {Status::Holds, "components are R-separated"};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto d = set_distance(report.components[i].points, report.components[j].points, 2 * radius, g_graph);
      report.separations[i][j] = report.separations[j][i] = d;
      if (d < params.r && report.c3.status == Status::Holds) {
        report.c3 = {Status::Fails, "components " + std::to_string(i) + ", " + std::to_string(j) + " at distance " +
                                        std::to_string(d)};
      }
    }
  }
  if (report.c3.status == Status::Holds && !interior) {
    report.c3 = {Status::Indeterminate, "support reaches the window margin"};
  }

  const auto scaled = static_cast<std::int64_t>(std::floor(static_cast<double>(params.r) / params.c));
  if (scaled > alpha.n_max()) {
    report.c4 = {Status::Indeterminate, "alpha table too short"};
  } else {
    const double threshold = static_cast<double>(alpha.vol[static_cast<std::size_t>(std::max<std::int64_t>(scaled, 0))]) / params.c;
    const auto cap = static_cast<std::size_t>(std::ceil(threshold)) + 1;
    report.c4 = {Status::Holds, "balls of radius R are alpha-large"};
    for (const auto& x : report.support) {
      std::uint64_t size = 0;
      try {
        size = ball_profile(g_graph, x, params.r, cap).back();
      } catch (const CapExceeded&) {
        size = cap + 1;
      }
      if (static_cast<double>(size) < threshold) {
        report.c4 = {Status::Fails, "|B(x, R)| too small at " + x};
        break;
      }
    }
  }
  return report;
}

nlohmann::json LowerBoundCertificate::to_json() const {
  nlohmann::json j = {{"R", r},
                      {"params", params_json(params)},
                      {"x0", x0},
                      {"radius", radius},
                      {"iterates", iterates},
                      {"near_support", near_support},
                      {"representatives", representatives},
                      {"ball_radius", r / 2},
                      {"ball_sizes", ball_sizes},
                      {"certified_count", certified},
                      {"component_count", component_count},
                      {"C1_measured", c1}};
  j["direct_count"] = direct ? nlohmann::json(*direct) : nlohmann::json(nullptr);
  return j;
}

namespace {

struct ProbeGraphs {
  LazyGraph g_graph;
  LazyGraph l_graph;
  Syllable g;
  SyllableWord h;
};

ProbeGraphs probe_graphs(const ProbeSetup& setup) {
  if (setup.space == nullptr) throw DomainError("probe needs a gluing");
  const gluing::GluingSpace& space = *setup.space;
  const ActionProvider& left = provider_for(space.providers(), setup.left);
  const ActionProvider& right = provider_for(space.providers(), setup.right);
  if (setup.left == setup.right || space.spec().commute(setup.left, setup.right)) {
    throw DomainError("probe needs two non-commuting factors");
  }
  if (left.is_trivial(setup.g)) throw DomainError("probe needs a nontrivial g");
  if (setup.t < 0 || static_cast<std::size_t>(setup.t) >= right.generators().size()) {
    throw DomainError("bad generator index for t");
  }
  const std::size_t count = left.generators().size();
  const FactorId id = setup.left;
  LazyGraph g_graph(count, [&space, id](const PointKey& x, std::size_t s) {
    return space.act_generator(space.alphabet().global_index(id, static_cast<int>(s)), x);
  });
  SyllableWord h;
  h.syllables = {{setup.left, setup.g},
                 {setup.right, {setup.t}},
                 {setup.left, left.invert(setup.g)},
                 {setup.right, {right.generators().inverse(setup.t)}}};
  return {std::move(g_graph), space.graph(), Syllable{setup.left, setup.g}, std::move(h)};
}

std::vector<PointKey> iterates(const gluing::GluingSpace& space, const SyllableWord& h, const PointKey& x0,
                               std::int64_t r) {
  std::vector<PointKey> out{x0};
  for (std::int64_t n = 1; n <= r; ++n) out.push_back(space.act(h, out.back()));
  return out;
}

// D-coarse component of y inside supp(g), in the G-metric.
std::vector<PointKey> support_component(const ProbeGraphs& pg, const gluing::GluingSpace& space, const PointKey& y,
                                        std::int64_t d, std::size_t cap) {
  std::set<PointKey> comp{y};
  std::vector<PointKey> queue{y};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& [x, dist] : ball(pg.g_graph, queue[head], d)) {
      if (space.act(pg.g, x) == x || comp.count(x) != 0) continue;
      comp.insert(x);
      queue.push_back(x);
      if (comp.size() > cap) throw CapExceeded("support component exceeds " + std::to_string(cap) + " points");
    }
  }
  return {comp.begin(), comp.end()};
}

}  // namespace

LowerBoundCertificate sparse_support_probe(const ProbeSetup& setup, std::int64_t r, const SparseParams& params) {
  if (r < 1) throw DomainError("probe needs R >= 1");
  const ProbeGraphs pg = probe_graphs(setup);
  const gluing::GluingSpace& space = *setup.space;

  LowerBoundCertificate cert;
  cert.r = r;
  cert.params = params;
  cert.params.r = r;
  cert.x0 = setup.x0;
  cert.radius = static_cast<std::int64_t>(std::floor(params.d2() * static_cast<double>(r)));
  cert.iterates = iterates(space, pg.h, setup.x0, r);
  if (std::set<PointKey>(cert.iterates.begin(), cert.iterates.end()).size() != cert.iterates.size()) {
    throw DomainError("probe inapplicable: h^n x0 repeats for some n <= R");
  }

  for (std::size_t n = 0; n < cert.iterates.size(); ++n) {
    const PointKey& x = cert.iterates[n];
    std::optional<PointKey> y;
    if (space.act(pg.g, x) != x) {
      y = x;
    } else {
      for (std::size_t s = 0; s < pg.l_graph.num_generators() && !y; ++s) {
        PointKey z = pg.l_graph.neighbor(x, s);
        if (space.act(pg.g, z) != z) y = std::move(z);
      }
    }
    if (!y) throw VerificationError("no support point within distance 1 of x_" + std::to_string(n));
    cert.near_support.push_back(*y);
  }

  // Components met by the y_n, keyed by their smallest point.
  std::map<PointKey, std::vector<PointKey>> components;
  std::vector<PointKey> component_of;
  for (const auto& y : cert.near_support) {
    auto comp = support_component(pg, space, y, params.d, 100000);
    const PointKey id = comp.front();
    component_of.push_back(id);
    if (components.count(id) == 0) {
      if (static_cast<double>(set_diameter(comp, params.d, pg.g_graph)) > params.c) {
        throw VerificationError("support component at " + id + " has diameter above C");
      }
      components.emplace(id, std::move(comp));
    }
  }
  for (const auto& [id, comp] : components) {
    std::set<PointKey> hood;
    for (const auto& p : comp) {
      for (const auto& [q, dist] : ball(pg.l_graph, p, 1)) hood.insert(q);
    }
    cert.c1 = std::max(cert.c1, static_cast<std::int64_t>(hood.size()));
  }
  cert.component_count = static_cast<std::int64_t>(components.size());
  if (cert.component_count < r / std::max<std::int64_t>(cert.c1, 1)) {
    throw VerificationError("fewer than floor(R / C1) distinct components");
  }

  std::set<PointKey> seen_components;
  std::unordered_set<PointKey> covered;
  for (std::size_t n = 0; n < cert.near_support.size(); ++n) {
    if (!seen_components.insert(component_of[n]).second) continue;
    const PointKey& z = cert.near_support[n];
    cert.representatives.push_back(z);
    const auto b = ball(pg.g_graph, z, r / 2);
    for (const auto& [p, dist] : b) {
      if (!covered.insert(p).second) throw VerificationError("G-balls around the representatives overlap");
    }
    cert.ball_sizes.push_back(b.size());
    cert.certified += b.size();
  }

  // Direct BFS in the L-graph, capped.
  std::unordered_map<PointKey, std::int64_t> dist{{setup.x0, 0}};
  std::vector<PointKey> frontier{setup.x0};
  bool affordable = true;
  for (std::int64_t k = 1; k <= cert.radius && !frontier.empty() && affordable; ++k) {
    std::vector<PointKey> next;
    for (const auto& p : frontier) {
      for (std::size_t s = 0; s < pg.l_graph.num_generators(); ++s) {
        PointKey q = pg.l_graph.neighbor(p, s);
        if (dist.emplace(q, k).second) next.push_back(std::move(q));
      }
    }
    if (dist.size() > setup.direct_cap) affordable = false;
    frontier = std::move(next);
  }
  if (affordable) {
    cert.direct = dist.size();
    for (std::size_t n = 0; n < cert.near_support.size(); ++n) {
      auto it = dist.find(cert.near_support[n]);
      if (it == dist.end() || it->second > params.d1() * r) {
        throw VerificationError("y_" + std::to_string(n) + " lies outside B(x0, D1 R)");
      }
    }
    for (const auto& p : covered) {
      if (dist.count(p) == 0) throw VerificationError("a G-ball leaves B(x0, D2 R)");
    }
    if (cert.certified > *cert.direct) throw VerificationError("certificate exceeds the direct ball count");
  }
  return cert;
}

bool replay_certificate(const ProbeSetup& setup, const LowerBoundCertificate& cert) {
  const ProbeGraphs pg = probe_graphs(setup);
  if (iterates(*setup.space, pg.h, cert.x0, cert.r) != cert.iterates) return false;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < cert.representatives.size(); ++i) {
    const auto size = ball(pg.g_graph, cert.representatives[i], cert.r / 2).size();
    if (i >= cert.ball_sizes.size() || size != cert.ball_sizes[i]) return false;
    total += size;
  }
  return total == cert.certified;
}

}  // namespace schreier::growth
