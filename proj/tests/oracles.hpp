#pragma once

// Brute-force reference implementations used to derive and freeze expected
// values. They share no code with the library beyond the standard library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// ---- Grigorchuk: the automaton run letter by letter ----

// States a, b, c, d, e (identity). Reads one tree word and returns the image.
inline std::string run_state(char state, const std::string& w) {
  std::string out = w;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (state == 'e') break;
    const char bit = out[i];
    switch (state) {
      case 'a':
        out[i] = bit == '0' ? '1' : '0';
        state = 'e';
        break;
      case 'b':
        state = bit == '0' ? 'a' : 'c';
        break;
      case 'c':
        state = bit == '0' ? 'a' : 'd';
        break;
      case 'd':
        state = bit == '0' ? 'e' : 'b';
        break;
    }
  }
  return out;
}

// Right to left: the last letter acts first.
inline std::string grig_act(const std::string& g, const std::string& w) {
  std::string x = w;
  for (auto it = g.rbegin(); it != g.rend(); ++it) x = run_state(*it, x);
  return x;
}

inline std::vector<std::string> level_words(int n) {
  std::vector<std::string> out;
  for (std::uint32_t v = 0; v < (1u << n); ++v) {
    std::string w;
    for (int i = 0; i < n; ++i) w += ((v >> i) & 1u) ? '1' : '0';
    out.push_back(w);
  }
  return out;
}

// Undirected BFS on an adjacency function over string vertices.
inline std::map<std::string, int> bfs(const std::string& root,
                                      const std::function<std::vector<std::string>(const std::string&)>& adj) {
  std::map<std::string, int> dist{{root, 0}};
  std::deque<std::string> q{root};
  while (!q.empty()) {
    const std::string x = q.front();
    q.pop_front();
    for (const auto& y : adj(x)) {
      if (dist.emplace(y, dist[x] + 1).second) q.push_back(y);
    }
  }
  return dist;
}

inline std::vector<std::string> grig_neighbours(const std::string& w) {
  std::vector<std::string> out;
  for (char s : std::string("abcd")) {
    const std::string y = grig_act(std::string(1, s), w);
    if (y != w) out.push_back(y);
  }
  return out;
}

inline int grig_distance(const std::string& x, const std::string& y) {
  return bfs(x, grig_neighbours).at(y);
}

// Max over w of d(gw, w) on level n, and the diameter 2^n - 1 measured by BFS.
inline std::pair<int, int> grig_max_displacement(const std::string& g, int n) {
  int best = 0;
  int diam = 0;
  for (const auto& w : level_words(n)) {
    const auto dist = bfs(w, grig_neighbours);
    best = std::max(best, dist.at(grig_act(g, w)));
    for (const auto& [k, d] : dist) diam = std::max(diam, d);
  }
  return {best, diam};
}

// ---- Lamplighter (Z/pZ) wr Z^d ----

struct Lamp {
  std::map<std::vector<std::int64_t>, std::int64_t> f;
  std::vector<std::int64_t> u;
  bool operator<(const Lamp& o) const { return u != o.u ? u < o.u : f < o.f; }
};

inline std::int64_t md(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// (f, u)(f', u') = (f(. + u') + f', u + u').
inline Lamp lamp_mul(const Lamp& a, const Lamp& b, std::int64_t p) {
  Lamp out;
  out.u = a.u;
  for (std::size_t i = 0; i < out.u.size(); ++i) out.u[i] += b.u[i];
  for (const auto& [y, v] : a.f) {
    auto z = y;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] -= b.u[i];
    out.f[z] = md(out.f[z] + v, p);
  }
  for (const auto& [y, v] : b.f) out.f[y] = md(out.f[y] + v, p);
  for (auto it = out.f.begin(); it != out.f.end();) it = it->second == 0 ? out.f.erase(it) : std::next(it);
  return out;
}

// Generators: lamp (and inverse when p > 2), then +e_i, -e_i.
inline std::vector<Lamp> lamp_gens(std::int64_t p, int d) {
  std::vector<Lamp> out;
  const std::vector<std::int64_t> zero(static_cast<std::size_t>(d), 0);
  out.push_back({{{zero, 1}}, zero});
  if (p > 2) out.push_back({{{zero, p - 1}}, zero});
  for (int i = 0; i < d; ++i) {
    auto e = zero;
    e[static_cast<std::size_t>(i)] = 1;
    out.push_back({{}, e});
    e[static_cast<std::size_t>(i)] = -1;
    out.push_back({{}, e});
  }
  return out;
}

// Point (r, v) of X_m encoded as r * m^d + sum v_i m^i.
inline std::int64_t encode(std::int64_t r, const std::vector<std::int64_t>& v, std::int64_t m) {
  std::int64_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * m + md(v[i], m);
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < v.size(); ++i) scale *= m;
  return r * scale + idx;
}

inline std::pair<std::int64_t, std::vector<std::int64_t>> decode(std::int64_t x, std::int64_t m, int d) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    v[static_cast<std::size_t>(i)] = x % m;
    x /= m;
  }
  return {x, v};
}

// Generator s on X_m: the lamp moves only points over 0; e_i translates.
inline std::int64_t lamp_point_act(int s, std::int64_t x, std::int64_t p, int d, std::int64_t m) {
  auto [r, v] = decode(x, m, d);
  const int lamps = p > 2 ? 2 : 1;
  if (s < lamps) {
    if (std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c == 0; })) r = md(r + (s == 0 ? 1 : -1), p);
  } else {
    const int i = (s - lamps) / 2;
    v[static_cast<std::size_t>(i)] += (s - lamps) % 2 == 0 ? 1 : -1;
  }
  return encode(r, v, m);
}

inline std::vector<int> lamp_distances(std::int64_t from, std::int64_t p, int d, std::int64_t m) {
  std::int64_t size = p;
  for (int i = 0; i < d; ++i) size *= m;
  const int gens = (p > 2 ? 2 : 1) + 2 * d;
  std::vector<int> dist(static_cast<std::size_t>(size), -1);
  dist[static_cast<std::size_t>(from)] = 0;
  std::deque<std::int64_t> q{from};
  while (!q.empty()) {
    const auto x = q.front();
    q.pop_front();
    for (int s = 0; s < gens; ++s) {
      const auto y = lamp_point_act(s, x, p, d, m);
      if (dist[static_cast<std::size_t>(y)] < 0) {
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
        q.push_back(y);
      }
    }
  }
  return dist;
}

inline int lamp_diameter(std::int64_t p, int d, std::int64_t m) {
  std::int64_t size = p;
  for (int i = 0; i < d; ++i) size *= m;
  int diam = 0;
  for (std::int64_t x = 0; x < size; ++x) {
    const auto dist = lamp_distances(x, p, d, m);
    diam = std::max(diam, *std::max_element(dist.begin(), dist.end()));
  }
  return diam;
}

inline std::int64_t l1(const std::vector<std::int64_t>& v) {
  std::int64_t s = 0;
  for (auto c : v) s += std::llabs(c);
  return s;
}

// Smallest witness ratio over nontrivial elements of word length <= len.
// Each element is represented by a shortest word; its displacement is
// measured by applying that word letter by letter on X_m.
inline std::map<Lamp, std::vector<int>> lamp_ball(std::int64_t p, int d, int len) {
  const auto gens = lamp_gens(p, d);
  const Lamp id{{}, std::vector<std::int64_t>(static_cast<std::size_t>(d), 0)};
  std::map<Lamp, std::vector<int>> words{{id, {}}};
  std::vector<Lamp> frontier{id};
  for (int k = 0; k < len; ++k) {
    std::vector<Lamp> next;
    for (const auto& g : frontier) {
      for (int s = 0; s < static_cast<int>(gens.size()); ++s) {
        const Lamp h = lamp_mul(g, gens[static_cast<std::size_t>(s)], p);
        if (!words.count(h)) {
          auto w = words[g];
          w.push_back(s);
          words[h] = w;
          next.push_back(h);
        }
      }
    }
    frontier = next;
  }
  return words;
}

inline double lamp_min_ratio(std::int64_t p, int d, int len) {
  const auto words = lamp_ball(p, d, len);
  std::map<std::int64_t, int> diameters;
  double best = 1.0;
  for (const auto& [g, w] : words) {
    if (w.empty()) continue;
    std::int64_t m;
    std::vector<std::int64_t> x(static_cast<std::size_t>(d), 0);
    if (l1(g.u) != 0) {
      m = 2 * l1(g.u);
    } else {
      const std::vector<std::int64_t>* far = nullptr;
      for (const auto& [y, v] : g.f) {
        if (far == nullptr || l1(y) > l1(*far)) far = &y;
      }
      m = std::max<std::int64_t>(2, 2 * l1(*far) + 1);
      x = *far;
    }
    const std::int64_t start = encode(0, x, m);
    std::int64_t y = start;
    for (auto it = w.rbegin(); it != w.rend(); ++it) y = lamp_point_act(*it, y, p, d, m);
    if (!diameters.count(m)) diameters[m] = lamp_diameter(p, d, m);
    const double ratio = static_cast<double>(lamp_distances(start, p, d, m)[static_cast<std::size_t>(y)]) / diameters[m];
    best = std::min(best, ratio);
  }
  return best;
}

// ---- Houghton H_2 acting on Z ----

// Permutation of Z that is the identity outside a finite table.
struct ZPerm {
  std::map<std::int64_t, std::int64_t> table;
  std::int64_t shift = 0;  // translation applied outside the table
  std::int64_t operator()(std::int64_t x) const {
    auto it = table.find(x);
    return it != table.end() ? it->second : x + shift;
  }
};

// Cycle x_1 -> x_2 -> ... -> x_k -> x_1.
inline ZPerm cycle(const std::vector<std::int64_t>& xs) {
  ZPerm p;
  for (std::size_t i = 0; i < xs.size(); ++i) p.table[xs[i]] = xs[(i + 1) % xs.size()];
  return p;
}

// gamma_{i,n} as the cycle 1 -> n+1 -> n -> ... -> 2 -> 1 on ray i: ray 1 is
// the negatives, ray 2 the positives.
inline ZPerm ray_cycle(int ray, int n) {
  std::vector<std::int64_t> xs{ray == 1 ? -1 : 1};
  for (int k = n + 1; k >= 2; --k) xs.push_back(ray == 1 ? -k : k);
  return n == 0 ? ZPerm{} : cycle(xs);
}

inline std::int64_t pair_count(int n) {
  std::set<std::pair<std::int64_t, std::int64_t>> images;
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      const ZPerm g1 = ray_cycle(1, a);
      const ZPerm g2 = ray_cycle(2, b);
      images.emplace(g1(g2(-1)), g1(g2(1)));
    }
  }
  return static_cast<std::int64_t>(images.size());
}

// Generators of H_2 on Z: t: x -> x + 1, T: x -> x - 1, s: swap 0 and 1.
inline std::int64_t h2_letter(int s, std::int64_t x) {
  if (s == 0) return x + 1;
  if (s == 1) return x - 1;
  return x == 0 ? 1 : (x == 1 ? 0 : x);
}

inline std::int64_t h2_word(const std::vector<int>& w, std::int64_t x) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) x = h2_letter(*it, x);
  return x;
}

// ---- Growth ----

inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = std::log(xs[i]), y = std::log(ys[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
