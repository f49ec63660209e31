#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "core/provider.hpp"

namespace schreier::gluing {

struct MarkedPiece {
  FactorId factor = 0;
  OrbitId orbit = 0;
  PointKey entry;
  PointKey exit;
};

// Chain of marked orbits with exit k identified to entry k+1. Points are keyed
// "k:local" (k counted from 0); an identified point is owned by the lower
// piece, so "k+1:e_{k+1}" is written "k:s_k".
class GluingSpace {
 public:
  GluingSpace(std::vector<MarkedPiece> pieces, GraphProductSpec spec, ProviderMap providers);

  const std::vector<MarkedPiece>& pieces() const { return pieces_; }
  std::size_t length() const { return pieces_.size(); }
  const GraphProductSpec& spec() const { return spec_; }
  const ProviderMap& providers() const { return providers_; }
  const GeneratorAlphabet& alphabet() const { return alphabet_; }

  bool finite() const;
  // Sum of piece sizes minus the q - 1 identifications; finite pieces only.
  std::size_t vertex_count() const;

  PointKey point(std::size_t piece, const PointKey& local) const;
  // (piece, local) pairs containing the point: one, or two for a seam point.
  std::vector<std::pair<std::size_t, PointKey>> locate(const PointKey& key) const;
  PointKey entry() const { return point(0, pieces_.front().entry); }
  PointKey exit() const { return point(pieces_.size() - 1, pieces_.back().exit); }

  // Action of the global generator s of the alphabet.
  PointKey act_generator(std::size_t s, const PointKey& x) const;
  PointKey act(const Syllable& syllable, const PointKey& x) const;
  // Syllables act right to left.
  PointKey act(const SyllableWord& g, const PointKey& x) const;

  LazyGraph graph() const;
  // Finite gluings only; vertices in piece order.
  FiniteGraph materialize() const;
  // Schreier graph of factor i alone on the gluing.
  FiniteGraph factor_graph(FactorId factor) const;

 private:
  std::vector<MarkedPiece> pieces_;
  GraphProductSpec spec_;
  ProviderMap providers_;
  GeneratorAlphabet alphabet_;
};

// Validates q >= 1, e_k != s_k, known factors, and c-admissibility, then
// builds the space. Throws ConfigError on any violation.
GluingSpace make_gluing(std::vector<MarkedPiece> pieces, const GraphProductSpec& spec,
                        const ProviderMap& providers);

enum class WitnessMode { MovedPoint, ControlledDiameter };

struct FaithfulnessWitness {
  SyllableWord normal_form;
  std::vector<std::size_t> block_starts;  // r_k, as positions in g_1 .. g_n (from 1)
  std::vector<double> constants;          // CD constants per piece, CD mode only
  GluingSpace space;
  PointKey start;  // e_1
  PointKey end;    // s_q = g e_1
};

// Builds the gluing on which g moves e_1, following the block decomposition of
// the reduced word g = g_n ... g_1. Verifies g e_1 = s_q != e_1 and, in CD
// mode, diam(X_k) <= C d(e_k, s_k) by exact BFS before returning.
FaithfulnessWitness faithfulness_witness(const SyllableWord& g, const GraphProductSpec& spec,
                                         const ProviderMap& providers,
                                         WitnessMode mode = WitnessMode::MovedPoint);

// Factor-id sequences of the given length with consecutive entries distinct
// and non-commuting, in lexicographic order.
std::vector<std::vector<FactorId>> admissible_sequences(const GraphProductSpec& spec,
                                                        std::size_t length);

enum class Marking { Random, Diametral };

struct FamilyBudget {
  std::size_t q_min = 1;
  std::size_t q_max = 1;
  std::size_t piece_size_cap = 256;
  std::size_t count_cap = 100;
  Marking marking = Marking::Random;
};

// Seeded enumeration of admissible gluings of finite orbits within the
// budget. Factors with no finite orbit of size 2..piece_size_cap never get a
// piece.
class GluingFamily {
 public:
  GluingFamily(GraphProductSpec spec, ProviderMap providers, FamilyBudget budget, std::uint64_t seed);

  std::optional<GluingSpace> next();
  std::vector<GluingSpace> all();
  const std::vector<FactorId>& eligible_factors() const { return eligible_; }

 private:
  MarkedPiece make_piece(FactorId factor);

  GraphProductSpec spec_;
  ProviderMap providers_;
  FamilyBudget budget_;
  std::mt19937_64 rng_;
  std::size_t produced_ = 0;
  std::vector<FactorId> eligible_;
  std::map<FactorId, std::vector<OrbitId>> orbits_;
};

// Lexicographically smallest pair (e, s) with d(e, s) = diam of a finite orbit.
std::pair<PointKey, PointKey> diametral_pair(const ActionProvider& provider, OrbitId orbit);

// Tuples (rho_1, ..., rho_k) are run-length encoded as (value, multiplicity).
using Tuple = std::vector<std::pair<std::int64_t, std::int64_t>>;

struct GrowthFunction {
  std::optional<double> exponent;  // f(n) = n^exponent
  std::vector<double> samples;     // f(n) = samples[n]

  static GrowthFunction power(double alpha) { return {alpha, {}}; }
  static GrowthFunction sampled(std::vector<double> values) { return {std::nullopt, std::move(values)}; }
  double operator()(std::int64_t n) const;
  bool defined_at(std::int64_t n) const;
};

struct PartitionFailure {
  double c1 = 0.0;
  Tuple tuple;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PartitionResult {
  bool holds = false;
  std::optional<double> c1;                // first candidate that works
  std::vector<PartitionFailure> failures;  // one per rejected candidate
  std::size_t skipped = 0;                 // samples beyond a sampled domain
};

// Default samples: all-ones tuples of length 2^j, j <= 40, and a few mixed
// tuples.
std::vector<Tuple> default_tuples();

// Checks sum f(rho_i) <= C1 f(C1 sum rho_i) on every sample for each
// candidate C1. Power laws with exponent >= 1 satisfy it with C1 = 1
// (f(n)/n nondecreasing). Throws DomainError on a non-monotone sampled f.
PartitionResult check_partition_condition(const GrowthFunction& f, const std::vector<double>& candidates,
                                          const std::vector<Tuple>& tuples = default_tuples());

}  // namespace schreier::gluing
