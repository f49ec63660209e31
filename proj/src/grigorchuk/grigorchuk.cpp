#include "grigorchuk/grigorchuk.hpp"

#include <algorithm>
#include <cstdlib>

#include "core/errors.hpp"

namespace schreier::grigorchuk {

bool is_letter(char ch) { return ch >= 'a' && ch <= 'd'; }

void validate_word(std::string_view g) {
  for (char ch : g) {
    if (!is_letter(ch)) throw DomainError(std::string("not a Grigorchuk generator: '") + ch + "'");
  }
}

std::string reduce(std::string_view g) {
  validate_word(g);
  std::string out;
  for (char ch : g) {
    if (out.empty()) {
      out.push_back(ch);
      continue;
    }
    const char top = out.back();
    if (ch == 'a' && top == 'a') {
      out.pop_back();
    } else if (ch != 'a' && top != 'a') {
      out.pop_back();
      if (ch != top) out.push_back(static_cast<char>('b' + 'c' + 'd' - ch - top));
    } else {
      out.push_back(ch);
    }
  }
  return out;
}

namespace {

// Section of a single letter at the input letter `bit`.
const char* letter_section(char letter, int bit) {
  switch (letter) {
    case 'b':
      return bit == 0 ? "a" : "c";
    case 'c':
      return bit == 0 ? "a" : "d";
    case 'd':
      return bit == 0 ? "" : "b";
    default:
      return "";
  }
}

void act_letter(char letter, std::string& w) {
  char state = letter;
  for (char& ch : w) {
    const int bit = ch - '0';
    switch (state) {
      case 'a':
        ch = bit == 0 ? '1' : '0';
        return;
      case 'b':
        state = bit == 0 ? 'a' : 'c';
        break;
      case 'c':
        state = bit == 0 ? 'a' : 'd';
        break;
      case 'd':
        if (bit == 0) return;
        state = 'b';
        break;
    }
  }
}

std::uint32_t act_letter_bits(char letter, std::uint32_t v, int level) {
  char state = letter;
  for (int pos = 0; pos < level; ++pos) {
    const std::uint32_t bit = (v >> pos) & 1U;
    switch (state) {
      case 'a':
        return v ^ (1U << pos);
      case 'b':
        state = bit == 0 ? 'a' : 'c';
        break;
      case 'c':
        state = bit == 0 ? 'a' : 'd';
        break;
      case 'd':
        if (bit == 0) return v;
        state = 'b';
        break;
    }
  }
  return v;
}

}  // namespace

std::string act(std::string_view g, std::string_view w) {
  validate_word(g);
  for (char ch : w) {
    if (ch != '0' && ch != '1') throw DomainError("not a binary word: " + std::string(w));
  }
  std::string out(w);
  for (auto it = g.rbegin(); it != g.rend(); ++it) act_letter(*it, out);
  return out;
}

Sections sections(std::string_view g) {
  validate_word(g);
  // suffix_swap[i]: parity of a's strictly right of position i.
  std::vector<int> suffix_swap(g.size() + 1, 0);
  for (std::size_t i = g.size(); i > 0; --i) suffix_swap[i - 1] = suffix_swap[i] ^ (g[i - 1] == 'a' ? 1 : 0);
  Sections out;
  out.swap = suffix_swap[0] != 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int parity = suffix_swap[i + 1];
    out.first += letter_section(g[i], 0 ^ parity);
    out.second += letter_section(g[i], 1 ^ parity);
  }
  out.first = reduce(out.first);
  out.second = reduce(out.second);
  return out;
}

bool WordProblem::is_trivial(std::string_view g) const {
  const std::string r = reduce(g);
  if (r.empty()) return true;
  if (std::count(r.begin(), r.end(), 'a') % 2 != 0) return false;
  if (r.size() == 1) return false;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(r);
    if (it != memo_.end()) return it->second;
  }
  const Sections s = sections(r);
  const bool result = is_trivial(s.first) && is_trivial(s.second);
  std::lock_guard<std::mutex> lock(mutex_);
  memo_.emplace(r, result);
  return result;
}

bool is_trivial(std::string_view g) {
  static WordProblem solver;
  return solver.is_trivial(g);
}

Portrait portrait(std::string_view g, int depth) {
  if (depth < 1) throw DomainError("portrait depth must be >= 1");
  Portrait out;
  out.element = std::string(g);
  out.depth = depth;
  // (vertex, section at vertex)
  std::vector<std::pair<std::string, std::string>> frontier{{"", reduce(g)}};
  for (int level = 0; level < depth; ++level) {
    std::vector<std::pair<std::string, std::string>> next;
    for (const auto& [vertex, section] : frontier) {
      if (section.empty()) continue;
      const Sections s = sections(section);
      if (s.swap) out.active.insert(vertex);
      next.emplace_back(vertex + "0", s.first);
      next.emplace_back(vertex + "1", s.second);
    }
    frontier = std::move(next);
  }
  return out;
}

std::string vertex_word(std::uint32_t v, int level) {
  std::string w(static_cast<std::size_t>(level), '0');
  for (int i = 0; i < level; ++i) {
    if ((v >> i) & 1U) w[static_cast<std::size_t>(i)] = '1';
  }
  return w;
}

std::uint32_t word_vertex(std::string_view w) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == '1') {
      v |= 1U << i;
    } else if (w[i] != '0') {
      throw DomainError("not a binary word: " + std::string(w));
    }
  }
  return v;
}

std::uint32_t act_bits(std::string_view g, std::uint32_t v, int level) {
  for (auto it = g.rbegin(); it != g.rend(); ++it) v = act_letter_bits(*it, v, level);
  return v;
}

std::int64_t LevelGraph::distance(std::uint32_t u, std::uint32_t v) const {
  return std::llabs(static_cast<std::int64_t>(position[u]) - static_cast<std::int64_t>(position[v]));
}

EdgeSet gray_rule_edges(int level) {
  EdgeSet edges;
  const std::uint32_t n = 1U << level;
  auto add = [&edges](std::uint32_t u, std::uint32_t v) {
    if (u != v) edges.insert({std::min(u, v), std::max(u, v)});
  };
  for (std::uint32_t v = 0; v < n; ++v) {
    add(v, v ^ 1U);
    for (int i = 0; i < level; ++i) {
      if (((v >> i) & 1U) == 0) {
        if (i + 1 < level) add(v, v ^ (1U << (i + 1)));
        break;
      }
    }
  }
  return edges;
}

EdgeSet action_edges(int level) {
  EdgeSet edges;
  const std::uint32_t n = 1U << level;
  for (std::uint32_t v = 0; v < n; ++v) {
    for (char s : std::string_view("abcd")) {
      const std::uint32_t w = act_letter_bits(s, v, level);
      if (w != v) edges.insert({std::min(v, w), std::max(v, w)});
    }
  }
  return edges;
}

LevelGraph level_graph(int level, int cap) {
  if (level < 1) throw DomainError("level must be >= 1");
  if (level > cap) throw CapExceeded("level " + std::to_string(level) + " exceeds cap " + std::to_string(cap));
  const std::uint32_t n = 1U << level;
  std::vector<PointKey> keys;
  keys.reserve(n);
  for (std::uint32_t v = 0; v < n; ++v) keys.push_back(vertex_word(v, level));
  FiniteGraph graph(std::move(keys), 4);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::size_t s = 0; s < 4; ++s) graph.set_target(v, s, act_letter_bits(static_cast<char>('a' + s), v, level));
  }

  const auto edge_list = graph.edges();
  const EdgeSet from_action(edge_list.begin(), edge_list.end());
  if (from_action != gray_rule_edges(level)) {
    throw VerificationError("level " + std::to_string(level) + ": action edges differ from Gray-code rule");
  }

  const std::uint32_t left = n - 1;  // 1^n
  const auto dist = distances_from(graph, left);
  LevelGraph out{level, std::move(graph), std::vector<std::uint32_t>(n), std::vector<std::uint32_t>(n)};
  for (std::uint32_t v = 0; v < n; ++v) {
    if (dist[v] == kUnreachable || dist[v] >= static_cast<std::int64_t>(n)) {
      throw VerificationError("level " + std::to_string(level) + " is not connected");
    }
    out.position[v] = static_cast<std::uint32_t>(dist[v]);
    out.order[static_cast<std::size_t>(dist[v])] = v;
  }
  for (std::uint32_t k = 0; k < n; ++k) {
    if (out.position[out.order[k]] != k) {
      throw VerificationError("level " + std::to_string(level) + " is not a path");
    }
  }
  return out;
}

std::string covering_map(std::string_view w) {
  if (w.size() < 2) throw DomainError("covering map needs a word of length >= 2");
  return std::string(w.substr(0, w.size() - 1));
}

const LevelGraph& LevelAtlas::at(int level) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = levels_.find(level);
  if (it == levels_.end()) {
    it = levels_.emplace(level, std::make_unique<LevelGraph>(level_graph(level, cap_))).first;
  }
  return *it->second;
}

namespace {

// Reversed bits: numeric order equals lexicographic order of the words.
std::uint32_t lex_key(std::uint32_t v, int level) {
  std::uint32_t r = 0;
  for (int i = 0; i < level; ++i) r = (r << 1) | ((v >> i) & 1U);
  return r;
}

}  // namespace

DisplacementWitness displacement_witness(std::string_view g, int max_level, const LevelAtlas& atlas,
                                         const WordProblem& solver) {
  const std::string r = reduce(g);
  if (solver.is_trivial(r)) throw DomainError("displacement witness needs a nontrivial element");
  for (int n = 1; n <= max_level; ++n) {
    const LevelGraph& lg = atlas.at(n);
    const std::uint32_t size = 1U << n;
    std::int64_t best = 0;
    std::uint32_t best_vertex = 0;
    for (std::uint32_t v = 0; v < size; ++v) {
      const std::int64_t delta = lg.distance(v, act_bits(r, v, n));
      if (delta > best || (delta == best && delta > 0 && lex_key(v, n) < lex_key(best_vertex, n))) {
        best = delta;
        best_vertex = v;
      }
    }
    if (best > 0 && 8 * best >= lg.diameter()) {
      return {n, vertex_word(best_vertex, n), best, lg.diameter()};
    }
  }
  throw CapExceeded("no displacement witness for " + std::string(g) + " up to level " + std::to_string(max_level) +
                    " (counterexample candidate)");
}

DisplacementWitness displacement_witness(std::string_view g, int max_level) {
  static LevelAtlas atlas;
  static WordProblem solver;
  return displacement_witness(g, max_level, atlas, solver);
}

std::vector<std::string> all_words(int max_length) {
  std::vector<std::string> out{""};
  std::vector<std::string> layer{""};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer) {
      for (char ch : std::string_view("abcd")) next.push_back(w + ch);
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

GrigorchukProvider::GrigorchukProvider(int level_cap)
    : level_cap_(level_cap), gens_({{"a", 0}, {"b", 1}, {"c", 2}, {"d", 3}}), atlas_(std::max(level_cap, 1)) {}

std::string GrigorchukProvider::to_letters(const Word& w) {
  std::string out;
  for (int g : w) {
    if (g < 0 || g > 3) throw DomainError("bad Grigorchuk generator index");
    out.push_back(static_cast<char>('a' + g));
  }
  return out;
}

Word GrigorchukProvider::from_letters(std::string_view g) {
  validate_word(g);
  Word out;
  for (char ch : g) out.push_back(ch - 'a');
  return out;
}

bool GrigorchukProvider::is_trivial(const Word& w) const { return solver_.is_trivial(to_letters(w)); }

Word GrigorchukProvider::normalize_word(const Word& w) const { return from_letters(reduce(to_letters(w))); }

std::vector<PointKey> GrigorchukProvider::orbit_points(OrbitId orbit) const {
  if (orbit < 1 || orbit > 30) throw DomainError("bad Grigorchuk level");
  std::vector<PointKey> out;
  const std::uint32_t n = 1U << orbit;
  for (std::uint32_t v = 0; v < n; ++v) out.push_back(vertex_word(v, static_cast<int>(orbit)));
  return out;
}

std::vector<OrbitId> GrigorchukProvider::orbit_catalogue(std::size_t max_size) const {
  std::vector<OrbitId> out;
  for (int n = 1; n <= level_cap_ && (std::size_t{1} << n) <= max_size; ++n) out.push_back(n);
  return out;
}

PointKey GrigorchukProvider::orbit_root(OrbitId orbit) const {
  return std::string(static_cast<std::size_t>(orbit), '1');
}

PointKey GrigorchukProvider::act(OrbitId, const PointKey& x, int generator) const {
  std::string out = x;
  act_letter(static_cast<char>('a' + generator), out);
  return out;
}

std::optional<MovedPoint> GrigorchukProvider::moved_point(const Word& g) const {
  auto cp = controlled_point(g);
  if (!cp) return std::nullopt;
  return MovedPoint{cp->orbit, cp->point};
}

std::optional<ControlledPoint> GrigorchukProvider::controlled_point(const Word& g) const {
  const std::string letters = to_letters(g);
  if (solver_.is_trivial(letters)) return std::nullopt;
  const DisplacementWitness w = displacement_witness(letters, level_cap_, atlas_, solver_);
  return ControlledPoint{w.level, w.vertex,
                         static_cast<double>(w.diameter) / static_cast<double>(w.displacement)};
}

}  // namespace schreier::grigorchuk
