#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/schreier_graph.hpp"
#include "core/words.hpp"
#include "gluing/gluing.hpp"

namespace schreier::growth {

// vol[n] = max over the basepoints of |B(x, n)|, n = 0..n_max.
struct GrowthTable {
  std::vector<std::uint64_t> vol;
  std::vector<PointKey> basepoints;
  bool exhaustive = false;

  std::int64_t n_max() const { return static_cast<std::int64_t>(vol.size()) - 1; }
};

// Every vertex of a finite graph (exhaustive), or the listed basepoints.
GrowthTable vol_table(const FiniteGraph& graph, std::int64_t n_max);
GrowthTable vol_table(const FiniteGraph& graph, std::int64_t n_max, const std::vector<PointKey>& basepoints);
GrowthTable vol_table(const LazyGraph& graph, std::int64_t n_max, const std::vector<PointKey>& basepoints,
                      std::size_t size_cap = 0);

// Pointwise max; exhaustive only if both inputs are.
GrowthTable merge_max(const GrowthTable& a, const GrowthTable& b);

// Monotone, vol[0] = 1, vol[n] <= (|S| + 1)^n.
bool is_valid(const GrowthTable& table, std::size_t num_generators);

std::string to_csv(const GrowthTable& table);

// Root, then the smallest key at distance exactly 2^j for j = 0..levels - 1
// (when such a point exists).
std::vector<PointKey> ladder_basepoints(const LazyGraph& graph, const PointKey& root, int levels);

struct Fit {
  double slope = 0.0;
  double stderr_ = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

// Least squares of log y against log x.
Fit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);
// Slope of log vol(n) against log n for lo <= n <= hi.
Fit fit_exponent(const GrowthTable& table, std::int64_t lo, std::int64_t hi);

// Classes of the relation d(a, b) <= D on the given points; each class
// sorted, classes ordered by first key.
std::vector<std::vector<PointKey>> coarse_components(const std::vector<PointKey>& points, std::int64_t d,
                                                     const LazyGraph& graph);

using PointMap = std::function<PointKey(const PointKey&)>;

enum class Status { Holds, Fails, Indeterminate };
const char* to_string(Status s);

struct Flag {
  Status status = Status::Indeterminate;
  std::string detail;
};

struct SparseParams {
  double c = 1.0;
  std::int64_t d = 1;
  std::int64_t r = 1;

  std::int64_t d1() const { return 2 * d + 3; }
  double d2() const { return static_cast<double>(d1()) + 0.5; }
};

struct Component {
  std::vector<PointKey> points;
  std::int64_t diameter = 0;
};

struct SparseSupportReport {
  SparseParams params;
  std::vector<PointKey> support;
  std::vector<Component> components;
  // separations[i][j]: distance between components i and j, or kUnreachable
  // when it exceeds R (or they lie in distinct orbits)
  std::vector<std::vector<std::int64_t>> separations;
  Flag c1, c2, c3, c4;

  nlohmann::json to_json() const;
};

// Evaluates (C1)-(C4) for g on the window of radius `radius` around the
// centers in the G-graph. alpha is the measured growth table of the
// G-factor's defining action. Throws DomainError if g has no support in the
// window.
SparseSupportReport check_sparse_conditions(const LazyGraph& g_graph, const PointMap& g, const SparseParams& params,
                                            const std::vector<PointKey>& centers, std::int64_t radius,
                                            const GrowthTable& alpha);

struct LowerBoundCertificate {
  std::int64_t r = 0;
  SparseParams params;
  PointKey x0;
  std::int64_t radius = 0;  // floor(D2 R)
  std::vector<PointKey> iterates;  // x_n = h^n x0, n = 0..R
  std::vector<PointKey> near_support;  // y_n
  std::vector<PointKey> representatives;  // z_i
  std::vector<std::uint64_t> ball_sizes;  // |B_G(z_i, floor(R/2))|
  std::uint64_t certified = 0;
  std::optional<std::uint64_t> direct;  // |B_L(x0, floor(D2 R))| when affordable
  std::int64_t component_count = 0;
  std::int64_t c1 = 0;  // largest L-neighbourhood of a visited component

  nlohmann::json to_json() const;
};

struct ProbeSetup {
  const gluing::GluingSpace* space = nullptr;
  FactorId left = 0;   // G
  FactorId right = 0;  // H
  Word g;              // element of G
  int t = 0;           // generator of H
  PointKey x0;
  std::size_t direct_cap = 1000000;
};

// Counting argument for G * H on a glued action: x_n = h^n x0 for
// h = [g, t] = g t g^-1 t^-1, y_n in supp(g) within distance 1 of x_n,
// z_i one per D-coarse component met, and the disjoint G-balls of radius
// floor(R/2) around them. Throws DomainError when the iterates repeat and
// VerificationError when a step of the argument fails on the data.
LowerBoundCertificate sparse_support_probe(const ProbeSetup& setup, std::int64_t r, const SparseParams& params);

// Re-derives iterates and ball sizes from the action alone.
bool replay_certificate(const ProbeSetup& setup, const LowerBoundCertificate& cert);

}  // namespace schreier::growth
