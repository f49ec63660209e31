#include <doctest.h>
#include <json.hpp>

#include <fstream>

#include "core/errors.hpp"
#include "lamplighter/lamplighter.hpp"
#include "oracles.hpp"

using namespace schreier;
using namespace schreier::lamplighter;

namespace {

Element lamp_at(std::int64_t x) { return {{{Vec{x}, 1}}, Vec{0}}; }

nlohmann::json constants_fixture() {
  std::ifstream in(std::string(FIXTURE_DIR) + "/lamplighter_cd_constants.json");
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_SUITE("lamplighter") {

TEST_CASE("group law") {
  const Group g(2, 1);
  const Element t = g.generator(1);
  const Element lamp = g.generator(0);
  const Element conj = g.multiply(g.multiply(t, lamp), g.inverse(t));
  const oracle::Lamp ot{{}, {1}}, ol{{{{0}, 1}}, {0}}, oT{{}, {-1}};
  const oracle::Lamp expected = oracle::lamp_mul(oracle::lamp_mul(ot, ol, 2), oT, 2);
  CHECK(expected.f == std::map<std::vector<std::int64_t>, std::int64_t>{{{1}, 1}});
  CHECK(conj.lamps == std::map<Vec, std::int64_t>{{Vec{1}, 1}});
  CHECK(conj.shift == Vec{0});
  CHECK(g.is_identity(g.multiply(lamp, lamp)));
  const Element w = g.evaluate({1, 0, 1, 0, 2, 2});
  CHECK(g.is_identity(g.multiply(w, g.inverse(w))));
}

TEST_CASE("projection and coset action") {
  const Group g(2, 1);
  const Element e = {{{Vec{3}, 1}, {Vec{7}, 1}}, Vec{5}};
  const CosetPoint x = g.project(e, 4);
  // lamps at 3 and 7 share the class 3 mod 4; the origin class has sum 0
  CHECK(x.lamp == 0);
  CHECK(x.torus == Vec{1});
  CHECK(g.coset_act(lamp_at(0), CosetPoint{0, Vec{0}, 5}) == CosetPoint{1, Vec{0}, 5});
  CHECK(g.coset_act(lamp_at(0), CosetPoint{0, Vec{2}, 5}) == CosetPoint{0, Vec{2}, 5});
  const Group g3(3, 1);
  CHECK(g3.coset_act(g3.generator(0), CosetPoint{0, Vec{0}, 4}) == CosetPoint{1, Vec{0}, 4});
  CHECK_THROWS_AS(g.project(e, 1), DomainError);
}

TEST_CASE("X_m sizes") {
  CHECK(build_X_m(Group(2, 1), 3).size() == 6);
  CHECK(build_X_m(Group(3, 1), 4).size() == 12);
  CHECK(build_X_m(Group(2, 2), 3).size() == 18);
  for (std::int64_t m = 2; m <= 8; ++m) {
    const Group g(2, 1);
    CHECK(verify_structure(g, m, build_X_m(g, m)));
  }
}

TEST_CASE("X_m diameter matches the oracle") {
  for (std::int64_t m : {2, 3, 5, 8}) {
    const CdOracle o{Group(2, 1)};
    CHECK(o.diameter(m) == oracle::lamp_diameter(2, 1, m));
  }
  const CdOracle o2{Group(2, 2)};
  CHECK(o2.diameter(4) == oracle::lamp_diameter(2, 2, 4));
}

TEST_CASE("cd witness, lamp case") {
  const Group g(2, 1);
  const CdOracle o(g);
  const CdWitness w = o.witness(lamp_at(3));
  CHECK(w.m == 7);
  CHECK(w.point == CosetPoint{0, Vec{3}, 7});
  CHECK(w.displacement >= 6);
  CHECK_THROWS_AS(o.witness(g.identity()), DomainError);
}

TEST_CASE("cd witness, translation case") {
  const Group g(2, 1);
  const CdWitness w = CdOracle(g).witness({{}, Vec{3}});
  CHECK(w.m == 6);
  CHECK(w.displacement == 3);
}

TEST_CASE("frozen ratios agree with the fixture and a brute-force oracle") {
  const auto fixture = constants_fixture();
  const int len = fixture.at("max_length").get<int>();
  for (const auto& c : fixture.at("constants")) {
    const auto p = c.at("p").get<std::int64_t>();
    const auto d = c.at("d").get<int>();
    const double frozen = c.at("ratio")[0].get<double>() / c.at("ratio")[1].get<double>();
    CAPTURE(p);
    CAPTURE(d);
    CHECK(certified_ratio(p, d) == doctest::Approx(frozen));
    CHECK(search_min_ratio(Group(p, d), len).min_ratio == doctest::Approx(frozen));
    CHECK(oracle::lamp_min_ratio(p, d, len) == doctest::Approx(frozen));
  }
  CHECK_THROWS_AS(certified_ratio(5, 1), DomainError);
}

TEST_CASE("cayley ball sizes") {
  for (int r : {1, 3, 6}) {
    CHECK(cayley_ball(Group(2, 1), r).size() == oracle::lamp_ball(2, 1, r).size());
    CHECK(cayley_ball(Group(3, 1), r).size() == oracle::lamp_ball(3, 1, r).size());
  }
  // frozen from oracle::lamp_ball
  CHECK(cayley_ball(Group(2, 1), 3).size() == 22);
}

}
