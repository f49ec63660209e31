#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>

#include "core/cyclic_providers.hpp"
#include "gluing/gluing.hpp"
#include "grigorchuk/grigorchuk.hpp"
#include "growth/growth.hpp"
#include "houghton/houghton.hpp"
#include "lamplighter/lamplighter.hpp"
#include "oracles.hpp"

using namespace schreier;

namespace {

// SplitMix64; every property runs a fixed number of cases from a fixed seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(double p = 0.5) { return static_cast<double>(next() % 1000000) < p * 1e6; }

 private:
  std::uint64_t state_;
};

constexpr int kCases = 200;

ProviderMap mixed_providers() {
  return {{1, std::make_shared<grigorchuk::GrigorchukProvider>()},
          {2, std::make_shared<IntegerProvider>()},
          {3, std::make_shared<FiniteCyclicProvider>(5)},
          {4, std::make_shared<houghton::HoughtonProvider>(2)}};
}

GraphProductSpec random_spec(Gen& gen) {
  std::vector<std::pair<FactorId, FactorId>> pairs;
  for (FactorId i = 1; i <= 4; ++i) {
    for (FactorId j = i + 1; j <= 4; ++j) {
      if (gen.coin(0.4)) pairs.emplace_back(i, j);
    }
  }
  return GraphProductSpec({1, 2, 3, 4}, pairs);
}

Word random_word(Gen& gen, std::size_t gens, int max_len) {
  Word w;
  const auto len = gen.range(1, max_len);
  for (std::int64_t i = 0; i < len; ++i) w.push_back(static_cast<int>(gen.range(0, static_cast<std::int64_t>(gens) - 1)));
  return w;
}

SyllableWord random_syllables(Gen& gen, const ProviderMap& pm, int max_syllables) {
  SyllableWord w;
  const auto n = gen.range(1, max_syllables);
  for (std::int64_t k = 0; k < n; ++k) {
    const auto f = static_cast<FactorId>(gen.range(1, static_cast<std::int64_t>(pm.size())));
    w.syllables.push_back({f, random_word(gen, pm.at(f)->generators().size(), 4)});
  }
  return w;
}

gluing::GluingSpace random_gluing(Gen& gen, const ProviderMap& pm, const GraphProductSpec& spec) {
  gluing::FamilyBudget b;
  b.q_min = 1;
  b.q_max = 5;
  b.piece_size_cap = 32;
  b.count_cap = 1;
  gluing::GluingFamily family(spec, pm, b, gen.next());
  return *family.next();
}

}  // namespace

TEST_CASE("normal form of w w^-1 is empty") {
  Gen gen(1);
  const auto pm = mixed_providers();
  for (int i = 0; i < kCases; ++i) {
    const auto spec = random_spec(gen);
    const auto w = random_syllables(gen, pm, 6);
    CHECK(reduce_to_normal_form(concat(w, inverse(w, pm)), spec, pm).empty());
  }
}

TEST_CASE("normal form is invariant under commuting swaps") {
  Gen gen(2);
  const auto pm = mixed_providers();
  for (int i = 0; i < kCases; ++i) {
    const auto spec = random_spec(gen);
    const auto w = random_syllables(gen, pm, 6);
    auto shuffled = w;
    for (int k = 0; k < 10 && shuffled.size() > 1; ++k) {
      const auto j = static_cast<std::size_t>(gen.range(0, static_cast<std::int64_t>(shuffled.size()) - 2));
      auto& s = shuffled.syllables;
      if (spec.commute(s[j].factor, s[j + 1].factor)) std::swap(s[j], s[j + 1]);
    }
    const auto a = reduce_to_normal_form(w, spec, pm);
    const auto b = reduce_to_normal_form(shuffled, spec, pm);
    CHECK(same_element_sequence(a, b, pm));
    // idempotent
    CHECK(same_element_sequence(reduce_to_normal_form(a, spec, pm), a, pm));
  }
}

TEST_CASE("faithfulness witness moves e_1 and embeds every piece") {
  Gen gen(3);
  const auto pm = mixed_providers();
  for (int i = 0; i < kCases; ++i) {
    const auto spec = random_spec(gen);
    const auto w = random_syllables(gen, pm, 6);
    if (reduce_to_normal_form(w, spec, pm).empty()) continue;
    const auto witness = gluing::faithfulness_witness(w, spec, pm);
    CHECK(witness.space.act(w, witness.start) == witness.end);
    CHECK(witness.start != witness.end);
  }
}

TEST_CASE("pieces embed and commuting factors commute on the gluing") {
  Gen gen(4);
  ProviderMap pm = mixed_providers();
  pm.erase(4);  // finite orbits only
  for (int i = 0; i < 60; ++i) {
    std::vector<std::pair<FactorId, FactorId>> pairs;
    if (gen.coin()) pairs.emplace_back(1, 2);
    if (gen.coin()) pairs.emplace_back(2, 3);
    if (pairs.size() == 2 && gen.coin()) pairs.pop_back();
    const GraphProductSpec spec({1, 2, 3}, pairs);
    const auto space = random_gluing(gen, pm, spec);
    const auto& alpha = space.alphabet();
    for (std::size_t k = 0; k < space.length(); ++k) {
      const auto& p = space.pieces()[k];
      const auto& prov = *pm.at(p.factor);
      for (const auto& y : prov.orbit_points(p.orbit)) {
        for (int s = 0; s < static_cast<int>(prov.generators().size()); ++s) {
          REQUIRE(space.act_generator(alpha.global_index(p.factor, s), space.point(k, y)) ==
                  space.point(k, prov.act(p.orbit, y, s)));
        }
      }
    }
    const FiniteGraph g = space.materialize();
    for (std::size_t a = 0; a < alpha.size(); ++a) {
      for (std::size_t b = 0; b < alpha.size(); ++b) {
        if (!spec.commute(alpha[a].factor, alpha[b].factor)) continue;
        for (const auto& x : g.keys()) {
          REQUIRE(space.act_generator(a, space.act_generator(b, x)) == space.act_generator(b, space.act_generator(a, x)));
        }
      }
    }
  }
}

TEST_CASE("gluing balls obey the (2n+1) f(n) bound") {
  Gen gen(5);
  ProviderMap pm = mixed_providers();
  pm.erase(4);
  const auto spec = GraphProductSpec::free_product({1, 2, 3});
  for (int i = 0; i < 40; ++i) {
    const auto space = random_gluing(gen, pm, spec);
    const std::int64_t n_max = 20;
    const auto vol = growth::vol_table(space.materialize(), n_max);
    std::vector<std::uint64_t> f(n_max + 1, 0);
    for (const auto& p : space.pieces()) {
      const auto t = growth::vol_table(pm.at(p.factor)->materialize_orbit(p.orbit), n_max);
      for (std::size_t n = 0; n < f.size(); ++n) f[n] = std::max(f[n], t.vol[n]);
    }
    CHECK(growth::is_valid(vol, space.alphabet().size()));
    for (std::size_t n = 0; n < f.size(); ++n) CHECK(vol.vol[n] <= (2 * n + 1) * f[n]);
  }
}

TEST_CASE("grigorchuk acts level-preservingly and trivial words act trivially") {
  Gen gen(6);
  const grigorchuk::WordProblem solver;
  for (int i = 0; i < kCases; ++i) {
    std::string g;
    const auto len = gen.range(1, 12);
    for (std::int64_t k = 0; k < len; ++k) g += "abcd"[gen.range(0, 3)];
    const int n = static_cast<int>(gen.range(1, 9));
    std::set<std::string> images;
    bool moves = false;
    for (const auto& w : oracle::level_words(n)) {
      const auto x = grigorchuk::act(g, w);
      CHECK(x.size() == w.size());
      CHECK(x == oracle::grig_act(g, w));
      CHECK(grigorchuk::act(grigorchuk::reduce(g), w) == x);
      images.insert(x);
      moves = moves || x != w;
    }
    CHECK(images.size() == (std::size_t{1} << n));
    if (solver.is_trivial(g)) CHECK_FALSE(moves);
  }
}

TEST_CASE("lamplighter projection is equivariant") {
  Gen gen(7);
  for (int i = 0; i < kCases; ++i) {
    const std::int64_t p = gen.range(2, 4);
    const int d = static_cast<int>(gen.range(1, 2));
    const lamplighter::Group group(p, d);
    const auto g = group.evaluate(random_word(gen, group.generators().size(), 10));
    const auto h = group.evaluate(random_word(gen, group.generators().size(), 10));
    const std::int64_t m = gen.range(2, 9);
    CHECK(group.project(group.multiply(g, h), m) == group.coset_act(g, group.project(h, m)));
    CHECK(group.is_identity(group.multiply(g, group.inverse(g))));
  }
}

TEST_CASE("houghton json round trip preserves the element and the shift sum") {
  Gen gen(8);
  for (int i = 0; i < kCases; ++i) {
    const int r = static_cast<int>(gen.range(2, 4));
    const Word w = random_word(gen, houghton::generator_list(r).size(), 12);
    const auto g = houghton::evaluate(r, w);
    const auto back = houghton::Element::from_json(g.to_json());
    CHECK(back == g);
    std::int64_t sum = 0;
    for (auto s : back.shifts()) sum += s;
    CHECK(sum == 0);
    CHECK(houghton::compose(g, houghton::invert(g)).is_identity());
    const Word v = random_word(gen, houghton::generator_list(r).size(), 6);
    Word wv = w;
    wv.insert(wv.end(), v.begin(), v.end());
    CHECK(houghton::evaluate(r, wv) == houghton::compose(g, houghton::evaluate(r, v)));
    if (r == 2) {
      for (std::int64_t x = -30; x <= 30; ++x) {
        CHECK(houghton::to_line(g.act(houghton::from_line(x))) == oracle::h2_word(w, x));
      }
    }
  }
}

TEST_CASE("coarse components ignore input order") {
  Gen gen(9);
  const IntegerProvider z;
  const LazyGraph line = z.orbit_graph(0);
  for (int i = 0; i < 50; ++i) {
    std::vector<PointKey> pts;
    std::set<std::int64_t> used;
    const auto n = gen.range(1, 12);
    for (std::int64_t k = 0; k < n; ++k) used.insert(gen.range(-30, 30));
    for (auto x : used) pts.push_back(std::to_string(x));
    const auto base = growth::coarse_components(pts, 2, line);
    for (int s = 0; s < 5; ++s) {
      for (std::size_t k = pts.size(); k > 1; --k) {
        std::swap(pts[k - 1], pts[static_cast<std::size_t>(gen.range(0, static_cast<std::int64_t>(k) - 1))]);
      }
      CHECK(growth::coarse_components(pts, 2, line) == base);
    }
  }
}

TEST_CASE("probe certificates grow with R") {
  const ProviderMap pm{{1, std::make_shared<houghton::HoughtonProvider>(2)}, {2, std::make_shared<IntegerProvider>()}};
  const auto spec = GraphProductSpec::free_product({1, 2});
  const Word g{2, 0, 2, 1};
  const SyllableWord h{{{1, g}, {2, {0}}, {1, pm.at(1)->invert(g)}, {2, {1}}}};
  SyllableWord power;
  for (int i = 0; i <= 21; ++i) power = concat(power, h);
  const auto w = gluing::faithfulness_witness(power, spec, pm);
  const growth::ProbeSetup setup{&w.space, 1, 2, g, 0, w.start};
  growth::SparseParams params;
  params.c = 2;
  params.d = 2;
  std::uint64_t last = 0;
  for (std::int64_t r = 1; r <= 20; ++r) {
    const auto cert = growth::sparse_support_probe(setup, r, params);
    CHECK(cert.certified >= last);
    CHECK(cert.certified <= *cert.direct);
    last = cert.certified;
  }
}
