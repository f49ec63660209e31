#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/provider.hpp"

namespace schreier::houghton {

// Vertex of the star with r rays. ray == 0 is the origin (pos 0); otherwise
// ray in [1, r] and pos >= 1.
struct StarVertex {
  int ray = 0;
  std::int64_t pos = 0;

  auto operator<=>(const StarVertex&) const = default;
  bool is_origin() const { return ray == 0; }
};

inline StarVertex origin() { return {}; }
StarVertex on_ray(int ray, std::int64_t pos);

// For r = 2 the star is identified with Z: origin 0, ray 1 at the negative
// integers (pos p -> -p), ray 2 at the positive ones.
std::int64_t to_line(const StarVertex& v);
StarVertex from_line(std::int64_t x);

// Element of H_r in canonical form: eventual shifts m_i, the minimal threshold
// N beyond which every ray point is translated by its shift, and the images of
// the non-fixed vertices at distance <= N.
class Element {
 public:
  using Map = std::function<StarVertex(const StarVertex&)>;

  static Element identity(int r);
  // Canonical form of a bijection that is a pure shift beyond `bound`.
  static Element from_function(int r, std::vector<std::int64_t> shifts, const Map& f,
                               std::int64_t bound);

  int rays() const { return static_cast<int>(shifts_.size()); }
  const std::vector<std::int64_t>& shifts() const { return shifts_; }
  std::int64_t threshold() const { return threshold_; }
  const std::map<StarVertex, StarVertex>& table() const { return table_; }
  bool is_identity() const { return threshold_ == 0 && table_.empty(); }
  bool finitely_supported() const;
  std::vector<StarVertex> support() const;

  StarVertex act(const StarVertex& v) const;

  bool operator==(const Element&) const = default;

  nlohmann::json to_json() const;
  static Element from_json(const nlohmann::json& j);

 private:
  std::vector<std::int64_t> shifts_;
  std::int64_t threshold_ = 0;
  std::map<StarVertex, StarVertex> table_;
};

// g * h, acting as h first.
Element compose(const Element& g, const Element& h);
Element invert(const Element& g);

// Transposition of two vertices.
Element transposition(int r, const StarVertex& a, const StarVertex& b);

// Generating list: t_j, t_j^-1 for j = 2..r, then the seam transposition
// sigma = (origin, (2,1)). t_j moves ray 1 inward and ray j outward by one
// step; for r = 2 the list is {t, t^-1, sigma} with t(x) = x + 1 on Z.
GeneratorList generator_list(int r);
std::vector<Element> standard_generators(int r);
Element evaluate(int r, const Word& w);

// Words for the ray-local shift t_i and transposition sigma_i of positions 1, 2
// on ray i.
Word ray_shift_word(int r, int i);
Word ray_swap_word(int r, int i);

// gamma_{i,n} = t_i^(n-1) sigma_i (t_i^-1 sigma_i)^(n-1), gamma_{i,0} = 1. It
// is the cycle (1 2 ... n+1) on ray i, so x_i = (i, 1) goes to position n+1.
Word gamma_word(int r, int i, int n);
Element gamma(int r, int i, int n);
// Letter count of the defining word: n |sigma_i| + 2(n-1) |t_i|.
std::int64_t gamma_length_bound(int r, int i, int n);
// Largest |sigma_i| + 2|t_i| over the rays; |gamma_{i,n}| <= C n.
std::int64_t gamma_length_constant(int r);

struct PairBound {
  int n = 0;
  std::int64_t count = 0;   // distinct images of (x_1, x_2)
  std::int64_t radius = 0;  // longest reduced word used
};

// Images of (x_1, x_2) under gamma_{1,m1} gamma_{2,m2}, 0 <= m1, m2 <= n.
PairBound pair_ball_lower_bound(int r, int n);

std::string vertex_key(int r, const StarVertex& v);
StarVertex parse_vertex_key(int r, const PointKey& key);

// Diagonal action of H_r on ordered pairs of vertices, keyed "x|y".
LazyGraph pair_action_graph(int r);

// H_r acting on the star (single infinite orbit, id 0). Keys are integers for
// r = 2 and "i:p" (origin "0") otherwise.
class HoughtonProvider final : public ActionProvider {
 public:
  explicit HoughtonProvider(int r = 2);

  std::string name() const override { return "H_" + std::to_string(r_); }
  const GeneratorList& generators() const override { return gens_; }
  int rays() const { return r_; }

  bool is_trivial(const Word& w) const override { return evaluate(r_, w).is_identity(); }

  bool orbit_is_finite(OrbitId) const override { return false; }
  std::vector<PointKey> orbit_points(OrbitId orbit) const override;
  std::vector<OrbitId> orbit_catalogue(std::size_t) const override { return {0}; }
  PointKey orbit_root(OrbitId) const override { return "0"; }
  PointKey act(OrbitId orbit, const PointKey& x, int generator) const override;

  std::optional<MovedPoint> moved_point(const Word& g) const override;

 private:
  int r_;
  GeneratorList gens_;
  std::vector<Element> elements_;
};

}  // namespace schreier::houghton
