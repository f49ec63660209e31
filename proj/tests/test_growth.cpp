#include <doctest.h>

#include <cmath>

#include "core/cyclic_providers.hpp"
#include "core/errors.hpp"
#include "gluing/gluing.hpp"
#include "growth/growth.hpp"
#include "houghton/houghton.hpp"
#include "oracles.hpp"

using namespace schreier;
using namespace schreier::growth;

namespace {

LazyGraph line() {
  static const IntegerProvider z;
  return z.orbit_graph(0);
}

}  // namespace

TEST_SUITE("growth") {

TEST_CASE("vol tables") {
  const FiniteGraph c8 = IntegerProvider().materialize_orbit(8);
  const GrowthTable t = vol_table(c8, 6);
  CHECK(t.exhaustive);
  CHECK(t.vol == std::vector<std::uint64_t>{1, 3, 5, 7, 8, 8, 8});
  CHECK(is_valid(t, 2));
  const GrowthTable l = vol_table(line(), 5, {"0", "100"});
  CHECK_FALSE(l.exhaustive);
  CHECK(l.vol == std::vector<std::uint64_t>{1, 3, 5, 7, 9, 11});
  CHECK(merge_max(t, l).vol[5] == 11);
  CHECK(to_csv(vol_table(c8, 1)) == "n,vol\n0,1\n1,3\n");
  GrowthTable bad;
  bad.vol = {1, 3, 2};
  CHECK_FALSE(is_valid(bad, 2));
}

TEST_CASE("ladder basepoints") {
  const auto pts = ladder_basepoints(line(), "0", 4);
  CHECK(pts == std::vector<PointKey>{"0", "-1", "-2", "-4", "-8"});
}

TEST_CASE("fits") {
  std::vector<double> xs, lin, quad;
  for (int n = 8; n <= 64; ++n) {
    xs.push_back(n);
    lin.push_back(2.0 * n + 1);
    quad.push_back(static_cast<double>(n) * n);
  }
  const Fit f = fit_loglog(xs, quad);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.stderr_ == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fit_loglog(xs, lin).slope == doctest::Approx(oracle::loglog_slope(xs, lin)));
  CHECK(fit_loglog(xs, lin).slope < 1.0);
  GrowthTable t;
  for (int n = 0; n <= 64; ++n) t.vol.push_back(2 * n + 1);
  CHECK(fit_exponent(t, 8, 64).slope == doctest::Approx(oracle::loglog_slope(xs, lin)));
  CHECK_THROWS_AS(fit_exponent(t, 8, 8), DomainError);
  CHECK_THROWS_AS(fit_exponent(t, 8, 100), DomainError);
}

TEST_CASE("coarse components") {
  const auto comps = coarse_components({"0", "1", "10", "11"}, 2, line());
  CHECK(comps == std::vector<std::vector<PointKey>>{{"0", "1"}, {"10", "11"}});
  CHECK(coarse_components({"0", "2", "4", "6"}, 2, line()).size() == 1);
  CHECK(coarse_components({"0", "3"}, 2, line()).size() == 2);
}

TEST_CASE("sparse conditions on a rotated 3-cycle") {
  const IntegerProvider z;
  const LazyGraph c3 = z.orbit_graph(3);
  const PointMap rot = [&](const PointKey& x) { return z.act(3, x, 0); };
  SparseParams p;
  p.c = 1;
  p.d = 1;
  p.r = 1;
  const auto alpha = vol_table(z.materialize_orbit(3), 2);
  const auto report = check_sparse_conditions(c3, rot, p, {"0"}, 4, alpha);
  CHECK(report.support.size() == 3);
  CHECK(report.c1.status == Status::Holds);
  CHECK(report.components.size() == 1);
  CHECK(report.c2.status == Status::Holds);
  CHECK(report.c3.status == Status::Holds);
  p.c = 0.5;
  CHECK(check_sparse_conditions(c3, rot, p, {"0"}, 4, alpha).c2.status == Status::Fails);
}

TEST_CASE("sparse conditions on two far swaps") {
  const LazyGraph z = line();
  const PointMap g = [](const PointKey& x) {
    const long v = std::stol(x);
    if (v == 0 || v == 1) return std::to_string(1 - v);
    if (v == 20 || v == 21) return std::to_string(41 - v);
    return x;
  };
  SparseParams p;
  p.c = 1;
  p.d = 1;
  p.r = 10;
  GrowthTable alpha;
  for (int n = 0; n <= 20; ++n) alpha.vol.push_back(2 * n + 1);
  const auto report = check_sparse_conditions(z, g, p, {"10"}, 40, alpha);
  CHECK(report.support == std::vector<PointKey>{"0", "1", "20", "21"});
  CHECK(report.components.size() == 2);
  CHECK(report.separations[0][1] == 19);
  CHECK(report.c3.status == Status::Holds);
  CHECK(report.c4.status == Status::Holds);
  p.r = 25;
  CHECK(check_sparse_conditions(z, g, p, {"10"}, 60, alpha).c3.status == Status::Fails);
  const PointMap id = [](const PointKey& x) { return x; };
  CHECK_THROWS_AS(check_sparse_conditions(z, id, p, {"0"}, 3, alpha), DomainError);
}

TEST_CASE("probe on H_2 * Z") {
  const ProviderMap pm{{1, std::make_shared<houghton::HoughtonProvider>(2)}, {2, std::make_shared<IntegerProvider>()}};
  const auto spec = GraphProductSpec::free_product({1, 2});
  const Word g{2, 0, 2, 1};
  SyllableWord h{{{1, g}, {2, {0}}, {1, pm.at(1)->invert(g)}, {2, {1}}}};
  SyllableWord power;
  for (int i = 0; i <= 9; ++i) power = concat(power, h);
  const auto w = gluing::faithfulness_witness(power, spec, pm);
  const ProbeSetup setup{&w.space, 1, 2, g, 0, w.start};
  SparseParams p;
  p.c = 2;
  p.d = 2;
  const auto one = sparse_support_probe(setup, 1, p);
  CHECK(one.certified >= 1);
  const auto eight = sparse_support_probe(setup, 8, p);
  CHECK(eight.iterates.size() == 9);
  CHECK(eight.certified <= *eight.direct);
  CHECK(replay_certificate(setup, eight));
  auto forged = eight;
  forged.ball_sizes[0] += 1;
  CHECK_FALSE(replay_certificate(setup, forged));
  const auto json = eight.to_json();
  CHECK(json.at("R") == 8);
}

}
