#include "houghton/houghton.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "core/errors.hpp"

namespace schreier::houghton {

namespace {

std::int64_t max_abs(const std::vector<std::int64_t>& v) {
  std::int64_t out = 0;
  for (auto x : v) out = std::max<std::int64_t>(out, std::llabs(x));
  return out;
}

void check_rays(int r) {
  if (r < 2) throw DomainError("Houghton groups need r >= 2");
}

void check_vertex(int r, const StarVertex& v) {
  if (v.ray == 0 && v.pos == 0) return;
  if (v.ray < 1 || v.ray > r || v.pos < 1) {
    throw DomainError("not a vertex of the " + std::to_string(r) + "-ray star");
  }
}

// Vertices at distance <= radius from the origin, origin first, then by
// distance and ray.
std::vector<StarVertex> window(int r, std::int64_t radius) {
  std::vector<StarVertex> out{origin()};
  for (std::int64_t p = 1; p <= radius; ++p) {
    for (int i = 1; i <= r; ++i) out.push_back({i, p});
  }
  return out;
}

}  // namespace

StarVertex on_ray(int ray, std::int64_t pos) {
  if (ray < 1 || pos < 1) throw DomainError("ray vertices need ray >= 1 and pos >= 1");
  return {ray, pos};
}

std::int64_t to_line(const StarVertex& v) {
  if (v.is_origin()) return 0;
  if (v.ray == 1) return -v.pos;
  if (v.ray == 2) return v.pos;
  throw DomainError("only two rays embed in Z");
}

StarVertex from_line(std::int64_t x) {
  if (x == 0) return origin();
  return x < 0 ? StarVertex{1, -x} : StarVertex{2, x};
}

Element Element::identity(int r) {
  check_rays(r);
  Element e;
  e.shifts_.assign(static_cast<std::size_t>(r), 0);
  return e;
}

Element Element::from_function(int r, std::vector<std::int64_t> shifts, const Map& f, std::int64_t bound) {
  check_rays(r);
  if (static_cast<int>(shifts.size()) != r) throw DomainError("shift vector length differs from r");
  if (std::accumulate(shifts.begin(), shifts.end(), std::int64_t{0}) != 0) {
    throw DomainError("eventual shifts must sum to zero");
  }
  Element e;
  e.shifts_ = std::move(shifts);
  for (int i = 1; i <= r; ++i) {
    const std::int64_t m = e.shifts_[static_cast<std::size_t>(i - 1)];
    for (std::int64_t p = bound; p >= 1; --p) {
      if (p + m < 1 || f({i, p}) != StarVertex{i, p + m}) {
        e.threshold_ = std::max(e.threshold_, p);
        break;
      }
    }
  }
  for (const auto& v : window(r, e.threshold_)) {
    const StarVertex image = f(v);
    if (image != v) e.table_.emplace(v, image);
  }
  return e;
}

bool Element::finitely_supported() const {
  return std::all_of(shifts_.begin(), shifts_.end(), [](std::int64_t m) { return m == 0; });
}

std::vector<StarVertex> Element::support() const {
  if (!finitely_supported()) throw DomainError("support is infinite");
  std::vector<StarVertex> out;
  for (const auto& [v, image] : table_) out.push_back(v);
  return out;
}

StarVertex Element::act(const StarVertex& v) const {
  check_vertex(rays(), v);
  if (v.pos <= threshold_) {
    auto it = table_.find(v);
    return it == table_.end() ? v : it->second;
  }
  return {v.ray, v.pos + shifts_[static_cast<std::size_t>(v.ray - 1)]};
}

namespace {

StarVertex default_image(const std::vector<std::int64_t>& shifts, const StarVertex& v) {
  if (v.is_origin()) return v;
  return {v.ray, v.pos + shifts[static_cast<std::size_t>(v.ray - 1)]};
}

nlohmann::json vertex_json(const StarVertex& v) { return nlohmann::json::array({v.ray, v.pos}); }

StarVertex vertex_from_json(const nlohmann::json& j, int r) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw ConfigError("vertex must be [ray, pos]");
  }
  StarVertex v{j[0].get<int>(), j[1].get<std::int64_t>()};
  try {
    check_vertex(r, v);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return v;
}

}  // namespace

// The table lists the vertices whose image differs from the default rule
// (origin fixed, ray i shifted by m_i).
nlohmann::json Element::to_json() const {
  nlohmann::json table = nlohmann::json::array();
  for (const auto& v : window(rays(), threshold_)) {
    const StarVertex image = act(v);
    if (image != default_image(shifts_, v)) table.push_back({vertex_json(v), vertex_json(image)});
  }
  return {{"shifts", shifts_}, {"table", table}};
}

Element Element::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("shifts") || !j.contains("table")) {
    throw ConfigError("Houghton element needs fields shifts and table");
  }
  const auto shifts = j.at("shifts").get<std::vector<std::int64_t>>();
  const int r = static_cast<int>(shifts.size());
  if (r < 2) throw ConfigError("shifts: need at least two rays");
  if (std::accumulate(shifts.begin(), shifts.end(), std::int64_t{0}) != 0) {
    throw ConfigError("shifts: must sum to zero");
  }
  std::map<StarVertex, StarVertex> table;
  std::int64_t bound = 0;
  for (const auto& entry : j.at("table")) {
    if (!entry.is_array() || entry.size() != 2) throw ConfigError("table: entries must be [from, to]");
    const StarVertex from = vertex_from_json(entry[0], r);
    const StarVertex to = vertex_from_json(entry[1], r);
    if (!table.emplace(from, to).second) throw ConfigError("table: duplicate source vertex");
    bound = std::max({bound, from.pos, to.pos});
  }
  bound += max_abs(shifts);
  auto f = [&](const StarVertex& v) {
    auto it = table.find(v);
    return it == table.end() ? default_image(shifts, v) : it->second;
  };
  // Bijectivity on the window: injective, no ray underflow, onto the inner part.
  std::set<StarVertex> images;
  const std::int64_t outer = bound + max_abs(shifts);
  for (const auto& v : window(r, outer)) {
    const StarVertex image = f(v);
    if (!image.is_origin() && image.pos < 1) throw ConfigError("table: shift leaves its ray");
    if (!images.insert(image).second) throw ConfigError("table: not injective");
  }
  for (const auto& v : window(r, bound)) {
    if (images.count(v) == 0) throw ConfigError("table: not surjective");
  }
  return from_function(r, shifts, f, bound);
}

Element compose(const Element& g, const Element& h) {
  if (g.rays() != h.rays()) throw DomainError("composing elements of different H_r");
  std::vector<std::int64_t> shifts(g.shifts());
  for (std::size_t i = 0; i < shifts.size(); ++i) shifts[i] += h.shifts()[i];
  const std::int64_t bound = std::max(h.threshold(), g.threshold() + max_abs(h.shifts()));
  return Element::from_function(
      g.rays(), std::move(shifts), [&](const StarVertex& v) { return g.act(h.act(v)); }, bound);
}

Element invert(const Element& g) {
  const int r = g.rays();
  std::vector<std::int64_t> shifts(g.shifts());
  for (auto& m : shifts) m = -m;
  const std::int64_t bound = g.threshold() + max_abs(shifts);
  std::map<StarVertex, StarVertex> preimage;
  for (const auto& v : window(r, bound + max_abs(shifts))) preimage.emplace(g.act(v), v);
  return Element::from_function(
      r, shifts,
      [&](const StarVertex& v) { return v.pos <= bound ? preimage.at(v) : default_image(shifts, v); },
      bound);
}

Element transposition(int r, const StarVertex& a, const StarVertex& b) {
  check_vertex(r, a);
  check_vertex(r, b);
  return Element::from_function(
      r, std::vector<std::int64_t>(static_cast<std::size_t>(r), 0),
      [&](const StarVertex& v) { return v == a ? b : (v == b ? a : v); }, std::max(a.pos, b.pos));
}

namespace {

Element ray_to_ray_shift(int r, int j) {
  std::vector<std::int64_t> shifts(static_cast<std::size_t>(r), 0);
  shifts[0] = -1;
  shifts[static_cast<std::size_t>(j - 1)] = 1;
  return Element::from_function(
      r, shifts,
      [j](const StarVertex& v) -> StarVertex {
        if (v.is_origin()) return {j, 1};
        if (v.ray == 1) return v.pos == 1 ? origin() : StarVertex{1, v.pos - 1};
        if (v.ray == j) return {j, v.pos + 1};
        return v;
      },
      1);
}

int shift_index(int j) { return 2 * (j - 2); }
int sigma_index(int r) { return 2 * (r - 1); }

}  // namespace

GeneratorList generator_list(int r) {
  check_rays(r);
  std::vector<Generator> gens;
  for (int j = 2; j <= r; ++j) {
    const std::string suffix = r == 2 ? "" : std::to_string(j);
    gens.push_back({"t" + suffix, shift_index(j) + 1});
    gens.push_back({"T" + suffix, shift_index(j)});
  }
  gens.push_back({"s", sigma_index(r)});
  return GeneratorList(std::move(gens));
}

std::vector<Element> standard_generators(int r) {
  check_rays(r);
  std::vector<Element> out;
  for (int j = 2; j <= r; ++j) {
    Element t = ray_to_ray_shift(r, j);
    Element t_inv = invert(t);
    out.push_back(std::move(t));
    out.push_back(std::move(t_inv));
  }
  out.push_back(transposition(r, origin(), {2, 1}));
  return out;
}

Element evaluate(int r, const Word& w) {
  const auto gens = standard_generators(r);
  Element out = Element::identity(r);
  for (int s : w) {
    if (s < 0 || static_cast<std::size_t>(s) >= gens.size()) throw DomainError("bad Houghton generator index");
    out = compose(out, gens[static_cast<std::size_t>(s)]);
  }
  return out;
}

namespace {

void check_ray(int r, int i) {
  check_rays(r);
  if (i < 1 || i > r) throw DomainError("invalid ray " + std::to_string(i));
}

}  // namespace

Word ray_shift_word(int r, int i) {
  check_ray(r, i);
  if (i == 1) return {shift_index(2) + 1};
  return {shift_index(i)};
}

Word ray_swap_word(int r, int i) {
  check_ray(r, i);
  const int t2 = shift_index(2);
  const int T2 = t2 + 1;
  const int s = sigma_index(r);
  if (i == 1) return {T2, T2, s, t2, t2};
  if (i == 2) return {t2, s, T2};
  const int ti = shift_index(i);
  const int Ti = ti + 1;
  return {ti, ti, T2, s, t2, Ti, Ti};
}

Word gamma_word(int r, int i, int n) {
  check_ray(r, i);
  if (n < 0) throw DomainError("gamma needs n >= 0");
  if (n == 0) return {};
  const GeneratorList gens = generator_list(r);
  const Word t = ray_shift_word(r, i);
  const Word t_inv = gens.invert(t);
  const Word sigma = ray_swap_word(r, i);
  Word w;
  for (int k = 0; k < n - 1; ++k) w.insert(w.end(), t.begin(), t.end());
  w.insert(w.end(), sigma.begin(), sigma.end());
  for (int k = 0; k < n - 1; ++k) {
    w.insert(w.end(), t_inv.begin(), t_inv.end());
    w.insert(w.end(), sigma.begin(), sigma.end());
  }
  return gens.free_reduce(w);
}

Element gamma(int r, int i, int n) { return evaluate(r, gamma_word(r, i, n)); }

std::int64_t gamma_length_bound(int r, int i, int n) {
  if (n <= 0) return 0;
  const auto sigma = static_cast<std::int64_t>(ray_swap_word(r, i).size());
  const auto t = static_cast<std::int64_t>(ray_shift_word(r, i).size());
  return n * sigma + 2 * (n - 1) * t;
}

std::int64_t gamma_length_constant(int r) {
  std::int64_t c = 0;
  for (int i = 1; i <= r; ++i) {
    c = std::max<std::int64_t>(c, static_cast<std::int64_t>(ray_swap_word(r, i).size() + 2 * ray_shift_word(r, i).size()));
  }
  return c;
}

PairBound pair_ball_lower_bound(int r, int n) {
  if (n < 0) throw DomainError("pair bound needs n >= 0");
  const GeneratorList gens = generator_list(r);
  std::vector<Word> w1, w2;
  std::vector<Element> g1, g2;
  for (int m = 0; m <= n; ++m) {
    w1.push_back(gamma_word(r, 1, m));
    w2.push_back(gamma_word(r, 2, m));
    g1.push_back(evaluate(r, w1.back()));
    g2.push_back(evaluate(r, w2.back()));
  }
  const StarVertex x1{1, 1};
  const StarVertex x2{2, 1};
  std::set<std::pair<StarVertex, StarVertex>> images;
  PairBound out;
  out.n = n;
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      const auto& ga = g1[static_cast<std::size_t>(a)];
      const auto& gb = g2[static_cast<std::size_t>(b)];
      images.emplace(ga.act(gb.act(x1)), ga.act(gb.act(x2)));
      Word w = w1[static_cast<std::size_t>(a)];
      const Word& tail = w2[static_cast<std::size_t>(b)];
      w.insert(w.end(), tail.begin(), tail.end());
      out.radius = std::max(out.radius, static_cast<std::int64_t>(gens.free_reduce(w).size()));
    }
  }
  out.count = static_cast<std::int64_t>(images.size());
  return out;
}

std::string vertex_key(int r, const StarVertex& v) {
  if (r == 2) return std::to_string(to_line(v));
  if (v.is_origin()) return "0";
  return std::to_string(v.ray) + ":" + std::to_string(v.pos);
}

StarVertex parse_vertex_key(int r, const PointKey& key) {
  try {
    if (r == 2) {
      std::size_t used = 0;
      const long long x = std::stoll(key, &used);
      if (used != key.size()) throw DomainError("bad vertex key " + key);
      return from_line(x);
    }
    if (key == "0") return origin();
    const auto colon = key.find(':');
    if (colon == std::string::npos) throw DomainError("bad vertex key " + key);
    const StarVertex v{std::stoi(key.substr(0, colon)), std::stoll(key.substr(colon + 1))};
    check_vertex(r, v);
    return v;
  } catch (const std::logic_error&) {
    throw DomainError("bad vertex key " + key);
  }
}

LazyGraph pair_action_graph(int r) {
  const auto gens = std::make_shared<std::vector<Element>>(standard_generators(r));
  return LazyGraph(gens->size(), [r, gens](const PointKey& key, std::size_t s) {
    const auto bar = key.find('|');
    if (bar == std::string::npos) throw DomainError("pair keys look like x|y");
    const Element& g = (*gens)[s];
    return vertex_key(r, g.act(parse_vertex_key(r, key.substr(0, bar)))) + "|" +
           vertex_key(r, g.act(parse_vertex_key(r, key.substr(bar + 1))));
  });
}

HoughtonProvider::HoughtonProvider(int r) : r_(r), gens_(generator_list(r)), elements_(standard_generators(r)) {}

std::vector<PointKey> HoughtonProvider::orbit_points(OrbitId) const {
  throw DomainError("the star is infinite");
}

PointKey HoughtonProvider::act(OrbitId, const PointKey& x, int generator) const {
  return vertex_key(r_, elements_.at(static_cast<std::size_t>(generator)).act(parse_vertex_key(r_, x)));
}

std::optional<MovedPoint> HoughtonProvider::moved_point(const Word& g) const {
  const Element e = evaluate(r_, g);
  if (e.is_identity()) return std::nullopt;
  for (const auto& v : window(r_, e.threshold() + 1)) {
    if (e.act(v) != v) return MovedPoint{0, vertex_key(r_, v)};
  }
  throw VerificationError("nontrivial Houghton element fixes its inspection window");
}

}  // namespace schreier::houghton
