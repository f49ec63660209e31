#include <doctest.h>

#include "core/errors.hpp"
#include "houghton/houghton.hpp"
#include "oracles.hpp"

using namespace schreier;
using namespace schreier::houghton;

namespace {

constexpr int t = 0, T = 1, s = 2;

// Compares g with the oracle permutation on a window of Z.
void check_on_line(const Element& g, const std::function<std::int64_t(std::int64_t)>& f, std::int64_t window = 40) {
  for (std::int64_t x = -window; x <= window; ++x) CHECK(to_line(g.act(from_line(x))) == f(x));
}

}  // namespace

TEST_SUITE("houghton") {

TEST_CASE("line identification") {
  CHECK(to_line(origin()) == 0);
  CHECK(to_line(on_ray(1, 3)) == -3);
  CHECK(to_line(on_ray(2, 3)) == 3);
  CHECK(from_line(-2) == StarVertex{1, 2});
  CHECK_THROWS_AS(on_ray(1, 0), DomainError);
}

TEST_CASE("generators of H_2") {
  check_on_line(evaluate(2, {t}), [](std::int64_t x) { return oracle::h2_letter(0, x); });
  check_on_line(evaluate(2, {T}), [](std::int64_t x) { return oracle::h2_letter(1, x); });
  check_on_line(evaluate(2, {s}), [](std::int64_t x) { return oracle::h2_letter(2, x); });
  CHECK(evaluate(2, {s, s}).is_identity());
  CHECK(evaluate(2, {t, T}).is_identity());
}

TEST_CASE("conjugated swap") {
  const Word w{t, t, t, s, T, T, T};
  const Element g = evaluate(2, w);
  check_on_line(g, [&](std::int64_t x) { return oracle::h2_word(w, x); });
  CHECK(g == transposition(2, on_ray(2, 3), on_ray(2, 4)));
  CHECK(g.support() == std::vector<StarVertex>{{2, 3}, {2, 4}});
}

TEST_CASE("canonical form") {
  const Element g = evaluate(2, {t, t});
  CHECK(g.shifts() == std::vector<std::int64_t>{-2, 2});
  // -1 and -2 leave ray 1
  CHECK(g.threshold() == 2);
  CHECK(g.table().size() == 5);
  CHECK(g.to_json().at("table").size() == 3);
  CHECK_FALSE(g.finitely_supported());
  CHECK(evaluate(2, {s}).finitely_supported());
  CHECK(compose(g, invert(g)).is_identity());
}

TEST_CASE("json round trip and validation") {
  const Element g = evaluate(2, {t, s, t, s, T});
  CHECK(Element::from_json(g.to_json()) == g);
  nlohmann::json bad = evaluate(2, {s}).to_json();
  // origin -> (2, 1) alone collides with the fixed (2, 1)
  bad["table"] = nlohmann::json::array({nlohmann::json::array({nlohmann::json::array({0, 0}), nlohmann::json::array({2, 1})})});
  CHECK_THROWS_AS(Element::from_json(bad), ConfigError);
  CHECK_THROWS_AS(Element::from_json(nlohmann::json{{"rays", 2}}), ConfigError);
}

TEST_CASE("ray swaps and gammas") {
  for (int i = 1; i <= 2; ++i) {
    CHECK(evaluate(2, ray_swap_word(2, i)) == transposition(2, on_ray(i, 1), on_ray(i, 2)));
    for (int n = 0; n <= 6; ++n) {
      CAPTURE(i);
      CAPTURE(n);
      const Element g = gamma(2, i, n);
      check_on_line(g, oracle::ray_cycle(i, n));
      const Word w = gamma_word(2, i, n);
      check_on_line(g, [&](std::int64_t x) { return oracle::h2_word(w, x); });
      CHECK(static_cast<std::int64_t>(gamma_word(2, i, n).size()) <= gamma_length_bound(2, i, n));
    }
  }
  for (int i = 1; i <= 3; ++i) {
    const Element g = evaluate(3, ray_swap_word(3, i));
    CHECK(g == transposition(3, on_ray(i, 1), on_ray(i, 2)));
    const Element c = gamma(3, i, 3);
    for (int k = 1; k <= 4; ++k) CHECK(c.act(on_ray(i, k)) == on_ray(i, k == 1 ? 4 : k - 1));
  }
  CHECK(gamma_length_constant(2) == 7);
  CHECK(gamma_length_constant(3) == 9);
}

TEST_CASE("pair ball lower bound") {
  // frozen from oracle::pair_count
  CHECK(oracle::pair_count(0) == 1);
  CHECK(oracle::pair_count(1) == 4);
  CHECK(oracle::pair_count(5) == 36);
  for (int n : {0, 1, 5, 9}) {
    const PairBound b = pair_ball_lower_bound(2, n);
    CHECK(b.count == oracle::pair_count(n));
    CHECK(b.count >= static_cast<std::int64_t>(n + 1) * (n + 1));
    CHECK(b.radius <= 2 * gamma_length_constant(2) * std::max(n, 1));
  }
}

TEST_CASE("pair action graph") {
  const LazyGraph g = pair_action_graph(2);
  CHECK(g.neighbor("-1|1", t) == "0|2");
  CHECK(g.neighbor("0|1", s) == "1|0");
}

TEST_CASE("provider") {
  const HoughtonProvider p(2);
  CHECK(p.act(0, "5", t) == "6");
  CHECK(p.act(0, "0", s) == "1");
  const auto mp = p.moved_point({t, t, t, s, T, T, T});
  REQUIRE(mp);
  CHECK(mp->point == "3");
  CHECK_FALSE(p.moved_point({s, s}));
  const HoughtonProvider p3(3);
  CHECK(p3.orbit_root(0) == "0");
  CHECK(p3.generators().size() == 5);
}

}
