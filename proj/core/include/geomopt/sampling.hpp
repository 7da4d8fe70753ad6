#pragma once

// Seeded random draws of the objects the invariant checks quantify over.

#include <cstdint>
#include <random>

#include "geomopt/tensor.hpp"
#include "geomopt/verify.hpp"

namespace geomopt {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  template <Variance V>
  Vector3<V> vector3(double lo = -1.0, double hi = 1.0) {
    Vector3<V> v;
    for (double& x : v.c) x = uniform(lo, hi);
    return v;
  }
  Vec3 vec(double lo = -1.0, double hi = 1.0) { return vector3<Variance::Contravariant>(lo, hi); }
  Covec3 covec(double lo = -1.0, double hi = 1.0) { return vector3<Variance::Covariant>(lo, hi); }

  /// A^T eta A with A = I + spread * U(-1, 1), redrawn until g00 > 0.1 and the
  /// metric is comfortably Lorentzian. Exactly symmetric.
  Metric4 lorentzian_metric(double spread = 0.3);

  /// Antisymmetric 4x4 with entries in [-1, 1].
  Mat4 antisymmetric();

  /// d_a F_{bc} with entries in [-1, 1], antisymmetric in (b, c).
  Rank3 field_derivative();

  /// Gamma^d_{ab} with entries in [-1, 1], symmetric in (a, b).
  Connection symmetric_connection();

  /// B B^T + 0.5 I with B entries in [-1, 1].
  Mat3 spd3();

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace geomopt
