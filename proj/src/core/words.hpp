#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace schreier {

class ActionProvider;

using FactorId = int;

// A word over one factor's generating list. Entries are generator indices;
// the product is read left to right and acts right to left, so the last
// letter is applied first.
using Word = std::vector<int>;

struct Generator {
  std::string name;
  int inverse = 0;  // index of the formal inverse in the same list
};

// Finite symmetric generating list of one factor.
class GeneratorList {
 public:
  GeneratorList() = default;
  explicit GeneratorList(std::vector<Generator> gens);

  std::size_t size() const { return gens_.size(); }
  const Generator& operator[](std::size_t i) const { return gens_[i]; }
  int inverse(int g) const { return gens_.at(static_cast<std::size_t>(g)).inverse; }

  Word invert(const Word& w) const;
  // Cancels adjacent g g^-1 pairs.
  Word free_reduce(const Word& w) const;
  std::string format(const Word& w) const;

 private:
  std::vector<Generator> gens_;
};

// Union of the factors' generating lists with a global index.
class GeneratorAlphabet {
 public:
  struct Entry {
    FactorId factor;
    int local;
  };

  GeneratorAlphabet() = default;
  void add_factor(FactorId id, const GeneratorList& gens);

  std::size_t size() const { return entries_.size(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  const std::vector<FactorId>& factors() const { return factors_; }
  std::size_t global_index(FactorId factor, int local) const;

 private:
  std::vector<Entry> entries_;
  std::vector<std::size_t> inverse_;
  std::vector<FactorId> factors_;
  std::map<std::pair<FactorId, int>, std::size_t> index_;
};

// Factor set I together with the symmetric commutation map c on distinct
// pairs. Pairs not listed have c = 0.
class GraphProductSpec {
 public:
  GraphProductSpec() = default;
  GraphProductSpec(std::set<FactorId> factors,
                   const std::vector<std::pair<FactorId, FactorId>>& commuting);

  static GraphProductSpec free_product(std::set<FactorId> factors);

  const std::set<FactorId>& factors() const { return factors_; }
  bool contains(FactorId i) const { return factors_.count(i) != 0; }
  // c(i, j); i == j is off the domain and reported as not commuting.
  bool commute(FactorId i, FactorId j) const;
  const std::set<std::pair<FactorId, FactorId>>& commuting_pairs() const { return pairs_; }

 private:
  std::set<FactorId> factors_;
  std::set<std::pair<FactorId, FactorId>> pairs_;  // stored with first < second
};

struct Syllable {
  FactorId factor = 0;
  Word element;

  bool operator==(const Syllable&) const = default;
};

struct SyllableWord {
  std::vector<Syllable> syllables;
  bool normal_form = false;

  std::size_t size() const { return syllables.size(); }
  bool empty() const { return syllables.empty(); }
};

using ProviderMap = std::map<FactorId, std::shared_ptr<const ActionProvider>>;

const ActionProvider& provider_for(const ProviderMap& providers, FactorId id);

SyllableWord concat(const SyllableWord& u, const SyllableWord& v);
SyllableWord inverse(const SyllableWord& w, const ProviderMap& providers);

// Reduced (minimal syllable length) form of a graph-product word.
//
// Left-greedy shuffle: each syllable is pushed onto the output and slides left
// past commuting syllables; on contact with a syllable of its own factor the
// two merge, and a merge that produces the identity removes the syllable. The
// pass repeats until the length stops shrinking. The result is then put in
// lexicographic trace order (smallest factor id first among syllables that can
// be moved to the front), so commutation-equivalent inputs give the same
// syllable sequence.
SyllableWord reduce_to_normal_form(const SyllableWord& word, const GraphProductSpec& spec,
                                   const ProviderMap& providers);

// Reorders a word into lexicographic trace order without merging.
SyllableWord trace_order(const SyllableWord& word, const GraphProductSpec& spec);

// Same factor sequence and pairwise equal factor elements.
bool same_element_sequence(const SyllableWord& a, const SyllableWord& b,
                           const ProviderMap& providers);

std::string format_word(const SyllableWord& w, const ProviderMap& providers);

}  // namespace schreier
