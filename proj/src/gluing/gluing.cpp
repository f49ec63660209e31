#include "gluing/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace schreier::gluing {

GluingSpace::GluingSpace(std::vector<MarkedPiece> pieces, GraphProductSpec spec, ProviderMap providers)
    : pieces_(std::move(pieces)), spec_(std::move(spec)), providers_(std::move(providers)) {
  for (FactorId id : spec_.factors()) alphabet_.add_factor(id, provider_for(providers_, id).generators());
}

bool GluingSpace::finite() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [this](const MarkedPiece& p) {
    return provider_for(providers_, p.factor).orbit_is_finite(p.orbit);
  });
}

std::size_t GluingSpace::vertex_count() const {
  if (!finite()) throw DomainError("gluing has an infinite piece");
  std::size_t total = 0;
  for (const auto& p : pieces_) total += provider_for(providers_, p.factor).orbit_points(p.orbit).size();
  return total - (pieces_.size() - 1);
}

PointKey GluingSpace::point(std::size_t piece, const PointKey& local) const {
  if (piece >= pieces_.size()) throw DomainError("piece index out of range");
  if (piece > 0 && local == pieces_[piece].entry) {
    return std::to_string(piece - 1) + ":" + pieces_[piece - 1].exit;
  }
  return std::to_string(piece) + ":" + local;
}

std::vector<std::pair<std::size_t, PointKey>> GluingSpace::locate(const PointKey& key) const {
  const auto colon = key.find(':');
  if (colon == std::string::npos || colon == 0) throw DomainError("bad gluing point key " + key);
  std::size_t piece = 0;
  for (std::size_t i = 0; i < colon; ++i) {
    if (key[i] < '0' || key[i] > '9') throw DomainError("bad gluing point key " + key);
    piece = piece * 10 + static_cast<std::size_t>(key[i] - '0');
  }
  if (piece >= pieces_.size()) throw DomainError("bad gluing point key " + key);
  std::vector<std::pair<std::size_t, PointKey>> out{{piece, key.substr(colon + 1)}};
  if (piece + 1 < pieces_.size() && out[0].second == pieces_[piece].exit) {
    out.emplace_back(piece + 1, pieces_[piece + 1].entry);
  }
  return out;
}

PointKey GluingSpace::act_generator(std::size_t s, const PointKey& x) const {
  const auto& entry = alphabet_[s];
  for (const auto& [piece, local] : locate(x)) {
    const MarkedPiece& p = pieces_[piece];
    if (p.factor != entry.factor) continue;
    return point(piece, provider_for(providers_, p.factor).act(p.orbit, local, entry.local));
  }
  return x;
}

PointKey GluingSpace::act(const Syllable& syllable, const PointKey& x) const {
  PointKey p = x;
  for (auto it = syllable.element.rbegin(); it != syllable.element.rend(); ++it) {
    p = act_generator(alphabet_.global_index(syllable.factor, *it), p);
  }
  return p;
}

PointKey GluingSpace::act(const SyllableWord& g, const PointKey& x) const {
  PointKey p = x;
  for (auto it = g.syllables.rbegin(); it != g.syllables.rend(); ++it) p = act(*it, p);
  return p;
}

LazyGraph GluingSpace::graph() const {
  return LazyGraph(alphabet_.size(), [this](const PointKey& x, std::size_t s) { return act_generator(s, x); });
}

namespace {

std::vector<PointKey> gluing_points(const GluingSpace& space) {
  std::vector<PointKey> keys;
  for (std::size_t k = 0; k < space.length(); ++k) {
    const MarkedPiece& p = space.pieces()[k];
    for (const auto& local : provider_for(space.providers(), p.factor).orbit_points(p.orbit)) {
      if (k > 0 && local == p.entry) continue;
      keys.push_back(std::to_string(k) + ":" + local);
    }
  }
  return keys;
}

}  // namespace

FiniteGraph GluingSpace::materialize() const {
  if (!finite()) throw DomainError("gluing has an infinite piece");
  FiniteGraph graph(gluing_points(*this), alphabet_.size());
  for (std::size_t v = 0; v < graph.size(); ++v) {
    for (std::size_t s = 0; s < alphabet_.size(); ++s) {
      graph.set_target(v, s, graph.index_of(act_generator(s, graph.key(v))));
    }
  }
  return graph;
}

FiniteGraph GluingSpace::factor_graph(FactorId factor) const {
  if (!finite()) throw DomainError("gluing has an infinite piece");
  const std::size_t count = provider_for(providers_, factor).generators().size();
  FiniteGraph graph(gluing_points(*this), count);
  for (std::size_t v = 0; v < graph.size(); ++v) {
    for (std::size_t s = 0; s < count; ++s) {
      const std::size_t global = alphabet_.global_index(factor, static_cast<int>(s));
      graph.set_target(v, s, graph.index_of(act_generator(global, graph.key(v))));
    }
  }
  return graph;
}

GluingSpace make_gluing(std::vector<MarkedPiece> pieces, const GraphProductSpec& spec,
                        const ProviderMap& providers) {
  if (pieces.empty()) throw ConfigError("a gluing needs at least one piece");
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const MarkedPiece& p = pieces[k];
    const std::string where = "piece " + std::to_string(k) + ": ";
    if (!spec.contains(p.factor)) throw ConfigError(where + "unknown factor " + std::to_string(p.factor));
    const ActionProvider& provider = provider_for(providers, p.factor);
    if (p.entry == p.exit) throw ConfigError(where + "marked points must be distinct");
    try {
      if (provider.orbit_is_finite(p.orbit)) {
        const auto points = provider.orbit_points(p.orbit);
        for (const auto* x : {&p.entry, &p.exit}) {
          if (std::find(points.begin(), points.end(), *x) == points.end()) {
            throw ConfigError(where + "point " + *x + " is not in the orbit");
          }
        }
      } else {
        provider.act(p.orbit, p.entry, 0);
        provider.act(p.orbit, p.exit, 0);
      }
    } catch (const DomainError& e) {
      throw ConfigError(where + e.what());
    }
    if (k > 0) {
      const FactorId prev = pieces[k - 1].factor;
      if (prev == p.factor || spec.commute(prev, p.factor)) {
        throw ConfigError(where + "consecutive factors " + std::to_string(prev) + ", " +
                          std::to_string(p.factor) + " are not admissible");
      }
    }
  }
  for (FactorId id : spec.factors()) provider_for(providers, id);
  return GluingSpace(std::move(pieces), spec, providers);
}

FaithfulnessWitness faithfulness_witness(const SyllableWord& g, const GraphProductSpec& spec,
                                         const ProviderMap& providers, WitnessMode mode) {
  const SyllableWord nf = reduce_to_normal_form(g, spec, providers);
  if (nf.empty()) throw DomainError("faithfulness witness needs a nontrivial element");
  // g_1 is the syllable applied first.
  std::vector<Syllable> order(nf.syllables.rbegin(), nf.syllables.rend());
  std::vector<std::size_t> starts{0};
  while (true) {
    const std::size_t current = starts.back();
    std::size_t next = current + 1;
    while (next < order.size() && spec.commute(order[next].factor, order[current].factor)) ++next;
    if (next >= order.size()) break;
    starts.push_back(next);
  }

  std::vector<MarkedPiece> pieces;
  std::vector<double> constants;
  for (std::size_t start : starts) {
    const Syllable& syl = order[start];
    const ActionProvider& provider = provider_for(providers, syl.factor);
    MarkedPiece piece;
    piece.factor = syl.factor;
    if (mode == WitnessMode::ControlledDiameter) {
      if (!provider.has_controlled_oracle()) {
        throw CapabilityError(provider.name() + " has no controlled-diameter oracle");
      }
      const auto cp = provider.controlled_point(syl.element);
      if (!cp) throw VerificationError(provider.name() + ": CD oracle gave nothing for a nontrivial element");
      piece.orbit = cp->orbit;
      piece.entry = cp->point;
      constants.push_back(cp->constant);
    } else {
      const auto mp = provider.moved_point(syl.element);
      if (!mp) throw VerificationError(provider.name() + ": no moved point for a nontrivial element");
      piece.orbit = mp->orbit;
      piece.entry = mp->point;
    }
    piece.exit = provider.act_word(piece.orbit, piece.entry, syl.element);
    if (piece.exit == piece.entry) throw VerificationError(provider.name() + ": oracle point is fixed");
    pieces.push_back(std::move(piece));
  }

  GluingSpace space = make_gluing(std::move(pieces), spec, providers);
  const PointKey start = space.entry();
  const PointKey end = space.exit();
  if (space.act(g, start) != end || space.act(nf, start) != end || end == start) {
    throw VerificationError("witness gluing does not move e_1 to s_q");
  }
  if (mode == WitnessMode::ControlledDiameter) {
    for (std::size_t k = 0; k < space.length(); ++k) {
      const MarkedPiece& p = space.pieces()[k];
      const FiniteGraph orbit = provider_for(providers, p.factor).materialize_orbit(p.orbit);
      const std::size_t e = orbit.index_of(p.entry);
      const auto dist = distances_from(orbit, e);
      const auto d = dist[orbit.index_of(p.exit)];
      const auto diam = component_diameter(orbit, e);
      if (static_cast<double>(diam) > constants[k] * static_cast<double>(d) + 1e-9) {
        throw VerificationError("piece " + std::to_string(k) + " violates diam <= C d(e, s)");
      }
    }
  }
  std::vector<std::size_t> block_starts;
  for (auto s : starts) block_starts.push_back(s + 1);
  return FaithfulnessWitness{nf, block_starts, constants, std::move(space), start, end};
}

std::vector<std::vector<FactorId>> admissible_sequences(const GraphProductSpec& spec, std::size_t length) {
  std::vector<std::vector<FactorId>> out;
  if (length == 0) return {{}};
  std::vector<FactorId> current;
  std::function<void()> extend = [&]() {
    if (current.size() == length) {
      out.push_back(current);
      return;
    }
    for (FactorId id : spec.factors()) {
      if (!current.empty() && (current.back() == id || spec.commute(current.back(), id))) continue;
      current.push_back(id);
      extend();
      current.pop_back();
    }
  };
  extend();
  return out;
}

std::pair<PointKey, PointKey> diametral_pair(const ActionProvider& provider, OrbitId orbit) {
  const FiniteGraph graph = provider.materialize_orbit(orbit);
  std::vector<std::size_t> by_key(graph.size());
  for (std::size_t v = 0; v < graph.size(); ++v) by_key[v] = v;
  std::sort(by_key.begin(), by_key.end(), [&](auto a, auto b) { return graph.key(a) < graph.key(b); });
  std::int64_t best = -1;
  std::pair<PointKey, PointKey> out;
  for (std::size_t u : by_key) {
    const auto dist = distances_from(graph, u);
    for (std::size_t v : by_key) {
      if (dist[v] != kUnreachable && dist[v] > best) {
        best = dist[v];
        out = {graph.key(u), graph.key(v)};
      }
    }
  }
  if (best <= 0) throw DomainError(provider.name() + ": orbit has no two distinct connected points");
  return out;
}

GluingFamily::GluingFamily(GraphProductSpec spec, ProviderMap providers, FamilyBudget budget, std::uint64_t seed)
    : spec_(std::move(spec)), providers_(std::move(providers)), budget_(budget), rng_(seed) {
  if (budget_.q_min == 0 || budget_.q_max < budget_.q_min || budget_.piece_size_cap == 0 || budget_.count_cap == 0) {
    throw ConfigError("budget entries must be positive with q_min <= q_max");
  }
  for (FactorId id : spec_.factors()) {
    const ActionProvider& provider = provider_for(providers_, id);
    std::vector<OrbitId> orbits;
    for (OrbitId o : provider.orbit_catalogue(budget_.piece_size_cap)) {
      if (!provider.orbit_is_finite(o)) continue;
      const auto size = provider.orbit_points(o).size();
      if (size >= 2 && size <= budget_.piece_size_cap) orbits.push_back(o);
    }
    if (!orbits.empty()) {
      eligible_.push_back(id);
      orbits_[id] = std::move(orbits);
    }
  }
}

MarkedPiece GluingFamily::make_piece(FactorId factor) {
  const ActionProvider& provider = provider_for(providers_, factor);
  const auto& orbits = orbits_.at(factor);
  MarkedPiece piece;
  piece.factor = factor;
  piece.orbit = orbits[rng_() % orbits.size()];
  if (budget_.marking == Marking::Diametral) {
    auto [e, s] = diametral_pair(provider, piece.orbit);
    piece.entry = e;
    piece.exit = s;
    return piece;
  }
  const auto points = provider.orbit_points(piece.orbit);
  const std::size_t e = rng_() % points.size();
  std::size_t s = rng_() % (points.size() - 1);
  if (s >= e) ++s;
  piece.entry = points[e];
  piece.exit = points[s];
  return piece;
}

std::optional<GluingSpace> GluingFamily::next() {
  if (produced_ >= budget_.count_cap || eligible_.empty()) return std::nullopt;
  ++produced_;
  const std::size_t q = budget_.q_min + rng_() % (budget_.q_max - budget_.q_min + 1);
  std::vector<MarkedPiece> pieces;
  pieces.push_back(make_piece(eligible_[rng_() % eligible_.size()]));
  while (pieces.size() < q) {
    std::vector<FactorId> options;
    for (FactorId id : eligible_) {
      const FactorId prev = pieces.back().factor;
      if (id != prev && !spec_.commute(prev, id)) options.push_back(id);
    }
    if (options.empty()) break;
    pieces.push_back(make_piece(options[rng_() % options.size()]));
  }
  return make_gluing(std::move(pieces), spec_, providers_);
}

std::vector<GluingSpace> GluingFamily::all() {
  std::vector<GluingSpace> out;
  while (auto g = next()) out.push_back(std::move(*g));
  return out;
}

double GrowthFunction::operator()(std::int64_t n) const {
  if (exponent) return n <= 0 ? 0.0 : std::pow(static_cast<double>(n), *exponent);
  if (!defined_at(n)) throw DomainError("growth function sampled only up to " + std::to_string(samples.size() - 1));
  return samples[static_cast<std::size_t>(n)];
}

bool GrowthFunction::defined_at(std::int64_t n) const {
  if (exponent) return n >= 0;
  return n >= 0 && static_cast<std::size_t>(n) < samples.size();
}

std::vector<Tuple> default_tuples() {
  std::vector<Tuple> out;
  for (int j = 0; j <= 40; ++j) out.push_back({{1, std::int64_t{1} << j}});
  out.push_back({{1, 1}, {100, 1}});
  out.push_back({{2, 3}, {7, 5}});
  out.push_back({{1, 1000}, {1000, 1}});
  return out;
}

namespace {

struct Evaluation {
  bool ok = true;
  bool skipped = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

Evaluation evaluate_tuple(const GrowthFunction& f, double c1, const Tuple& tuple) {
  Evaluation e;
  double total = 0.0;
  for (const auto& [value, count] : tuple) {
    if (value < 0 || count < 0) throw DomainError("tuple entries must be nonnegative");
    if (!f.defined_at(value)) {
      e.skipped = true;
      return e;
    }
    e.lhs += static_cast<double>(count) * f(value);
    total += static_cast<double>(count) * static_cast<double>(value);
  }
  const double arg = std::floor(c1 * total);
  if (arg > 9e18 || !f.defined_at(static_cast<std::int64_t>(arg))) {
    e.skipped = true;
    return e;
  }
  e.rhs = c1 * f(static_cast<std::int64_t>(arg));
  e.ok = e.lhs <= e.rhs * (1.0 + 1e-12);
  return e;
}

}  // namespace

PartitionResult check_partition_condition(const GrowthFunction& f, const std::vector<double>& candidates,
                                          const std::vector<Tuple>& tuples) {
  if (candidates.empty()) throw DomainError("no C1 candidates");
  for (std::size_t n = 1; n < f.samples.size(); ++n) {
    if (f.samples[n] < f.samples[n - 1]) {
      throw DomainError("growth function decreases at n = " + std::to_string(n));
    }
  }
  PartitionResult result;
  for (double c1 : candidates) {
    if (c1 <= 0.0) throw DomainError("C1 candidates must be positive");
    std::vector<Tuple> samples = tuples;
    if (f.exponent && *f.exponent < 1.0) {
      // all-ones tuples longer than c1^((1 + a) / (1 - a)) fail
      const double a = *f.exponent;
      const double k = std::floor(std::pow(c1, (1.0 + a) / (1.0 - a))) + 1.0;
      if (k < 9e18) samples.push_back({{1, static_cast<std::int64_t>(k)}});
    }
    std::optional<PartitionFailure> failure;
    for (const auto& tuple : samples) {
      const Evaluation e = evaluate_tuple(f, c1, tuple);
      if (e.skipped) {
        ++result.skipped;
        continue;
      }
      if (!e.ok) {
        failure = PartitionFailure{c1, tuple, e.lhs, e.rhs};
        break;
      }
    }
    if (!failure) {
      result.holds = true;
      result.c1 = c1;
      return result;
    }
    result.failures.push_back(*failure);
  }
  return result;
}

}  // namespace schreier::gluing
