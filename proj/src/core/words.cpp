#include "core/words.hpp"

#include <algorithm>
#include <sstream>

#include "core/errors.hpp"
#include "core/provider.hpp"

namespace schreier {

GeneratorList::GeneratorList(std::vector<Generator> gens) : gens_(std::move(gens)) {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const int inv = gens_[i].inverse;
    if (inv < 0 || static_cast<std::size_t>(inv) >= gens_.size() ||
        gens_[static_cast<std::size_t>(inv)].inverse != static_cast<int>(i)) {
      throw ConfigError("generator list not closed under inversion at " + gens_[i].name);
    }
  }
}

Word GeneratorList::invert(const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

Word GeneratorList::free_reduce(const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (int g : w) {
    if (!out.empty() && inverse(out.back()) == g) {
      out.pop_back();
    } else {
      out.push_back(g);
    }
  }
  return out;
}

std::string GeneratorList::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i != 0 && gens_.at(static_cast<std::size_t>(w[i])).name.size() > 1) out += ' ';
    out += gens_.at(static_cast<std::size_t>(w[i])).name;
  }
  return out;
}

void GeneratorAlphabet::add_factor(FactorId id, const GeneratorList& gens) {
  if (std::find(factors_.begin(), factors_.end(), id) != factors_.end()) {
    throw ConfigError("duplicate factor id " + std::to_string(id));
  }
  factors_.push_back(id);
  const std::size_t base = entries_.size();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    entries_.push_back({id, static_cast<int>(i)});
    inverse_.push_back(base + static_cast<std::size_t>(gens.inverse(static_cast<int>(i))));
    index_[{id, static_cast<int>(i)}] = base + i;
  }
}

std::size_t GeneratorAlphabet::global_index(FactorId factor, int local) const {
  auto it = index_.find({factor, local});
  if (it == index_.end()) throw ConfigError("unknown generator of factor " + std::to_string(factor));
  return it->second;
}

GraphProductSpec::GraphProductSpec(std::set<FactorId> factors,
                                   const std::vector<std::pair<FactorId, FactorId>>& commuting)
    : factors_(std::move(factors)) {
  for (auto [i, j] : commuting) {
    if (i == j) throw ConfigError("commutation map has no value on the diagonal (factor " + std::to_string(i) + ")");
    if (!contains(i) || !contains(j)) {
      throw ConfigError("commuting pair references unknown factor (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    pairs_.insert({std::min(i, j), std::max(i, j)});
  }
}

GraphProductSpec GraphProductSpec::free_product(std::set<FactorId> factors) {
  return GraphProductSpec(std::move(factors), {});
}

bool GraphProductSpec::commute(FactorId i, FactorId j) const {
  if (i == j) return false;
  return pairs_.count({std::min(i, j), std::max(i, j)}) != 0;
}

const ActionProvider& provider_for(const ProviderMap& providers, FactorId id) {
  auto it = providers.find(id);
  if (it == providers.end() || !it->second) {
    throw ConfigError("no provider for factor id " + std::to_string(id));
  }
  return *it->second;
}

SyllableWord concat(const SyllableWord& u, const SyllableWord& v) {
  SyllableWord out;
  out.syllables = u.syllables;
  out.syllables.insert(out.syllables.end(), v.syllables.begin(), v.syllables.end());
  return out;
}

SyllableWord inverse(const SyllableWord& w, const ProviderMap& providers) {
  SyllableWord out;
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it) {
    out.syllables.push_back({it->factor, provider_for(providers, it->factor).invert(it->element)});
  }
  return out;
}

namespace {

// One left-greedy pass. Returns true if anything merged or cancelled.
bool reduce_pass(std::vector<Syllable>& syllables, const GraphProductSpec& spec,
                 const ProviderMap& providers) {
  bool changed = false;
  std::vector<Syllable> out;
  for (auto& syl : syllables) {
    const ActionProvider& provider = provider_for(providers, syl.factor);
    if (provider.is_trivial(syl.element)) {
      changed = true;
      continue;
    }
    bool merged = false;
    for (std::size_t k = out.size(); k > 0; --k) {
      Syllable& left = out[k - 1];
      if (left.factor == syl.factor) {
        Word product = provider.normalize_word(provider.compose(left.element, syl.element));
        if (provider.is_trivial(product)) {
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(k - 1));
        } else {
          left.element = std::move(product);
        }
        merged = true;
        break;
      }
      if (!spec.commute(left.factor, syl.factor)) break;
    }
    if (merged) {
      changed = true;
    } else {
      out.push_back(std::move(syl));
    }
  }
  syllables = std::move(out);
  return changed;
}

}  // namespace

SyllableWord trace_order(const SyllableWord& word, const GraphProductSpec& spec) {
  std::vector<Syllable> rest = word.syllables;
  SyllableWord out;
  out.normal_form = word.normal_form;
  while (!rest.empty()) {
    std::size_t best = rest.size();
    for (std::size_t k = 0; k < rest.size(); ++k) {
      bool movable = true;
      for (std::size_t j = 0; j < k && movable; ++j) {
        movable = spec.commute(rest[j].factor, rest[k].factor);
      }
      if (movable && (best == rest.size() || rest[k].factor < rest[best].factor)) best = k;
    }
    out.syllables.push_back(std::move(rest[best]));
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

SyllableWord reduce_to_normal_form(const SyllableWord& word, const GraphProductSpec& spec,
                                   const ProviderMap& providers) {
  for (const auto& syl : word.syllables) {
    if (!spec.contains(syl.factor)) {
      throw ConfigError("syllable references unknown factor id " + std::to_string(syl.factor));
    }
    provider_for(providers, syl.factor);
  }
  std::vector<Syllable> syllables = word.syllables;
  for (auto& syl : syllables) syl.element = provider_for(providers, syl.factor).normalize_word(syl.element);
  while (reduce_pass(syllables, spec, providers)) {
  }
  SyllableWord out{std::move(syllables), true};
  return trace_order(out, spec);
}

bool same_element_sequence(const SyllableWord& a, const SyllableWord& b,
                           const ProviderMap& providers) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.syllables[k].factor != b.syllables[k].factor) return false;
    const auto& provider = provider_for(providers, a.syllables[k].factor);
    if (!provider.equal(a.syllables[k].element, b.syllables[k].element)) return false;
  }
  return true;
}

std::string format_word(const SyllableWord& w, const ProviderMap& providers) {
  if (w.empty()) return "1";
  std::ostringstream out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const auto& syl = w.syllables[k];
    if (k != 0) out << " . ";
    out << syl.factor << ":[" << provider_for(providers, syl.factor).generators().format(syl.element) << "]";
  }
  return out.str();
}

Word ActionProvider::compose(const Word& u, const Word& v) const {
  Word out = u;
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

bool ActionProvider::equal(const Word& u, const Word& v) const {
  return is_trivial(compose(u, invert(v)));
}

PointKey ActionProvider::act_word(OrbitId orbit, const PointKey& x, const Word& w) const {
  PointKey p = x;
  for (auto it = w.rbegin(); it != w.rend(); ++it) p = act(orbit, p, *it);
  return p;
}

LazyGraph ActionProvider::orbit_graph(OrbitId orbit) const {
  return LazyGraph(generators().size(), [this, orbit](const PointKey& x, std::size_t s) {
    return act(orbit, x, static_cast<int>(s));
  });
}

FiniteGraph ActionProvider::materialize_orbit(OrbitId orbit) const {
  if (!orbit_is_finite(orbit)) throw DomainError(name() + ": orbit " + std::to_string(orbit) + " is infinite");
  std::vector<PointKey> points = orbit_points(orbit);
  FiniteGraph graph(points, generators().size());
  for (std::size_t v = 0; v < points.size(); ++v) {
    for (std::size_t s = 0; s < generators().size(); ++s) {
      graph.set_target(v, s, graph.index_of(act(orbit, points[v], static_cast<int>(s))));
    }
  }
  return graph;
}

}  // namespace schreier
