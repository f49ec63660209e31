#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "core/provider.hpp"
#include "core/schreier_graph.hpp"

namespace schreier::grigorchuk {

// Elements are words over {a, b, c, d}. Words act right to left: "ab" applies
// b first. Vertices of the binary tree are strings over {0, 1}, first letter
// nearest the root.
//
// Wreath recursion: a = (1, 1) swap, b = (a, c), c = (a, d), d = (1, b).

inline constexpr int kDefaultLevelCap = 16;

bool is_letter(char ch);
void validate_word(std::string_view g);

// Deletes aa and merges adjacent letters of {b, c, d} (Klein four-group), so
// the result alternates between a and {b, c, d}.
std::string reduce(std::string_view g);

std::string act(std::string_view g, std::string_view w);

struct Sections {
  bool swap = false;
  std::string first;   // section at 0
  std::string second;  // section at 1
};

// act(g, x w) = (swap applied to x) act(g_x, w). Sections come back reduced.
Sections sections(std::string_view g);

// Word problem by contraction: reduce, reject odd a-count, recurse on the two
// sections (strictly shorter once the length is at least 2). Memoized on the
// reduced word; safe to call from several threads.
class WordProblem {
 public:
  bool is_trivial(std::string_view g) const;

 private:
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, bool> memo_;
};

bool is_trivial(std::string_view g);

struct Portrait {
  std::string element;
  int depth = 0;
  std::set<std::string> active;  // vertices w with |w| < depth and sigma_w != 1
};

Portrait portrait(std::string_view g, int depth);

// Schreier graph Gamma_n of the level {0,1}^n. Vertex v encodes the word whose
// i-th letter is bit i of v; the graph keys are the words themselves.
struct LevelGraph {
  int level = 0;
  FiniteGraph graph;
  std::vector<std::uint32_t> order;     // left to right, starting at 1^n
  std::vector<std::uint32_t> position;  // inverse of order

  std::int64_t diameter() const { return (std::int64_t{1} << level) - 1; }
  std::int64_t distance(std::uint32_t u, std::uint32_t v) const;
};

std::string vertex_word(std::uint32_t v, int level);
std::uint32_t word_vertex(std::string_view w);
std::uint32_t act_bits(std::string_view g, std::uint32_t v, int level);

using EdgeSet = std::set<std::pair<std::uint32_t, std::uint32_t>>;
// Edges from the Gray-code rule: flip the first digit; flip the digit after the
// first 0.
EdgeSet gray_rule_edges(int level);
// Edges (w, s w), s in {a, b, c, d}, loops dropped.
EdgeSet action_edges(int level);

// Builds Gamma_n from the action, checks it against the Gray-code rule, and
// orders it by BFS from 1^n. Throws CapExceeded above `cap` and
// VerificationError if the two edge sets differ or the graph is not a path.
LevelGraph level_graph(int level, int cap = kDefaultLevelCap);

std::string covering_map(std::string_view w);

struct DisplacementWitness {
  int level = 0;
  std::string vertex;
  std::int64_t displacement = 0;
  std::int64_t diameter = 0;

  double ratio() const { return static_cast<double>(displacement) / static_cast<double>(diameter); }
};

// Caches level graphs so repeated witness searches stay cheap.
class LevelAtlas {
 public:
  explicit LevelAtlas(int cap = kDefaultLevelCap) : cap_(cap) {}
  const LevelGraph& at(int level) const;
  int cap() const { return cap_; }

 private:
  int cap_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<LevelGraph>> levels_;
};

// Scans levels 1..max_level and returns the first level n with a vertex w such
// that 8 d_n(gw, w) >= diam(Gamma_n); w maximizes the displacement, ties going
// to the smallest word. Throws DomainError on a trivial g and CapExceeded when
// no level up to max_level works.
DisplacementWitness displacement_witness(std::string_view g, int max_level, const LevelAtlas& atlas,
                                         const WordProblem& solver);
DisplacementWitness displacement_witness(std::string_view g, int max_level = 12);

// All words of length <= max_length over {a, b, c, d}, shortest first,
// lexicographic within a length.
std::vector<std::string> all_words(int max_length);

class GrigorchukProvider final : public ActionProvider {
 public:
  explicit GrigorchukProvider(int level_cap = 12);

  std::string name() const override { return "Grigorchuk"; }
  const GeneratorList& generators() const override { return gens_; }

  bool is_trivial(const Word& w) const override;
  Word normalize_word(const Word& w) const override;
  static std::string to_letters(const Word& w);
  static Word from_letters(std::string_view g);

  bool orbit_is_finite(OrbitId) const override { return true; }
  std::vector<PointKey> orbit_points(OrbitId orbit) const override;
  std::vector<OrbitId> orbit_catalogue(std::size_t max_size) const override;
  PointKey orbit_root(OrbitId orbit) const override;
  PointKey act(OrbitId orbit, const PointKey& x, int generator) const override;

  std::optional<MovedPoint> moved_point(const Word& g) const override;
  std::optional<ControlledPoint> controlled_point(const Word& g) const override;
  bool has_controlled_oracle() const override { return true; }

 private:
  int level_cap_;
  GeneratorList gens_;
  WordProblem solver_;
  LevelAtlas atlas_;
};

}  // namespace schreier::grigorchuk
