#pragma once

#include <cstdint>

#include "core/provider.hpp"

namespace schreier {

// Z = <x> acting on the disjoint union of the cycles Z/mZ (orbit id m >= 1)
// and on Z itself (orbit id 0). Orbits of controlled diameter: x^k moves 0 to
// |k| in Z/2|k|Z, which is a diametral pair.
class IntegerProvider final : public ActionProvider {
 public:
  IntegerProvider();

  std::string name() const override { return "Z"; }
  const GeneratorList& generators() const override { return gens_; }

  bool is_trivial(const Word& w) const override { return exponent_sum(w) == 0; }
  Word normalize_word(const Word& w) const override;
  static std::int64_t exponent_sum(const Word& w);
  static Word power(std::int64_t k);

  bool orbit_is_finite(OrbitId orbit) const override { return orbit >= 1; }
  std::vector<PointKey> orbit_points(OrbitId orbit) const override;
  std::vector<OrbitId> orbit_catalogue(std::size_t max_size) const override;
  PointKey orbit_root(OrbitId) const override { return "0"; }
  PointKey act(OrbitId orbit, const PointKey& x, int generator) const override;

  std::optional<MovedPoint> moved_point(const Word& g) const override;
  std::optional<ControlledPoint> controlled_point(const Word& g) const override;
  bool has_controlled_oracle() const override { return true; }

 private:
  GeneratorList gens_;
};

// Z/kZ acting regularly on itself (single orbit, id k).
class FiniteCyclicProvider final : public ActionProvider {
 public:
  explicit FiniteCyclicProvider(std::int64_t order);

  std::string name() const override { return "Z/" + std::to_string(order_) + "Z"; }
  const GeneratorList& generators() const override { return gens_; }
  std::int64_t order() const { return order_; }

  bool is_trivial(const Word& w) const override;
  Word normalize_word(const Word& w) const override;

  bool orbit_is_finite(OrbitId) const override { return true; }
  std::vector<PointKey> orbit_points(OrbitId orbit) const override;
  std::vector<OrbitId> orbit_catalogue(std::size_t max_size) const override;
  PointKey orbit_root(OrbitId) const override { return "0"; }
  PointKey act(OrbitId orbit, const PointKey& x, int generator) const override;

  std::optional<MovedPoint> moved_point(const Word& g) const override;
  std::optional<ControlledPoint> controlled_point(const Word& g) const override;
  bool has_controlled_oracle() const override { return true; }

 private:
  std::int64_t residue(const Word& w) const;

  std::int64_t order_;
  GeneratorList gens_;
};

}  // namespace schreier
