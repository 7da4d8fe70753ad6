#pragma once

// Small-tensor algebra on 3+1 dimensional space-time with signature (+,-,-,-).
// Index 0 is time, 1..3 are space. Spatial 3-vectors are stored 0-based, so
// component c[0] is the paper-style index 1.

#include <array>
#include <cmath>
#include <cstddef>

#include "geomopt/errors.hpp"
#include "geomopt/matrix.hpp"

namespace geomopt {

enum class Variance { Covariant, Contravariant };

constexpr Variance opposite(Variance v) {
  return v == Variance::Covariant ? Variance::Contravariant : Variance::Covariant;
}

using Vector4 = std::array<double, 4>;
using Point3 = std::array<double, 3>;

/// Three real components with a variance tag carried in the type.
template <Variance V>
struct Vector3 {
  std::array<double, 3> c{};

  constexpr double operator[](std::size_t i) const { return c[i]; }
  constexpr double& operator[](std::size_t i) { return c[i]; }

  friend constexpr bool operator==(const Vector3&, const Vector3&) = default;

  friend constexpr Vector3 operator+(Vector3 x, const Vector3& y) {
    for (std::size_t i = 0; i < 3; ++i) x.c[i] += y.c[i];
    return x;
  }
  friend constexpr Vector3 operator-(Vector3 x, const Vector3& y) {
    for (std::size_t i = 0; i < 3; ++i) x.c[i] -= y.c[i];
    return x;
  }
  friend constexpr Vector3 operator*(double s, Vector3 x) {
    for (double& v : x.c) v *= s;
    return x;
  }
};

using Vec3 = Vector3<Variance::Contravariant>;
using Covec3 = Vector3<Variance::Covariant>;

/// Index identification valid only in flat Cartesian 3-space (delta_ij metric).
template <Variance V>
constexpr Vector3<opposite(V)> euclidean_dual(const Vector3<V>& v) {
  return {v.c};
}

template <Variance V>
double norm(const Vector3<V>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

/// (a x b)^i = eps^{ijk} a_j b_k with eps^{123} = +1.
template <Variance A, Variance B>
constexpr Vec3 cross(const Vector3<A>& a, const Vector3<B>& b) {
  return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}

/// t^{ij} v_j for a contravariant rank-2 t, or t^i_j v^j for a mixed one.
template <Variance V>
constexpr Vec3 operator*(const Mat3& t, const Vector3<V>& v) {
  Vec3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i] += t(i, j) * v[j];
  return r;
}

// ---------------------------------------------------------------------------
// Levi-Civita symbols.

/// Orientation of the 4D symbol: eps_{0123} = eps^{0123} = kLeviCivitaOrientation.
/// With -1 the alternating tensor gives e^{0123} = +1/sqrt(-g) and
/// e_{0123} = -sqrt(-g), which reproduces the component layouts of *F^{ab}
/// and *G_{ab} used throughout (e.g. *F^{01} = -B^1/sqrt(-g)).
inline constexpr int kLeviCivitaOrientation = -1;

/// Sign of the permutation (a,b,c,d) of (0,1,2,3), 0 on repeated indices.
constexpr int permutation_sign4(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  const std::size_t p[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  return sign;
}

constexpr int levi_civita4(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  return kLeviCivitaOrientation * permutation_sign4(a, b, c, d);
}

/// 3D symbol on 0-based spatial indices, eps^{012} = +1.
constexpr int levi_civita3(std::size_t i, std::size_t j, std::size_t k) {
  if (i == j || j == k || i == k) return 0;
  int sign = 1;
  if (i > j) sign = -sign;
  if (i > k) sign = -sign;
  if (j > k) sign = -sign;
  return sign;
}

// ---------------------------------------------------------------------------
// Metrics.

/// Symmetric 4x4 metric g_{ab}. Symmetry is checked exactly on construction.
class Metric4 {
 public:
  explicit Metric4(const Mat4& g);

  static Metric4 minkowski() { return Metric4(Mat4::diagonal({1.0, -1.0, -1.0, -1.0})); }
  static Metric4 diagonal(double g00, double g11, double g22, double g33) {
    return Metric4(Mat4::diagonal({g00, g11, g22, g33}));
  }

  const Mat4& components() const { return g_; }
  double operator()(std::size_t i, std::size_t j) const { return g_(i, j); }

  double determinant() const { return geomopt::determinant(g_); }
  bool is_lorentzian() const { return determinant() < 0.0; }

  /// sqrt(-det g); throws NonLorentzian when det g >= 0.
  double sqrt_minus_det() const;

  /// The block g_{ij}, i,j = 1..3.
  Mat3 spatial_block() const;

  friend bool operator==(const Metric4&, const Metric4&) = default;

 private:
  Mat4 g_;
};

/// Default relative tolerance used across the library.
inline constexpr double kDefaultTolerance = 1e-12;

/// g^{ab}. Throws SingularMetric when |det g| < tol * max|g|^4.
Metric4 metric_inverse(const Metric4& g, double tol = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Field tensors.

enum class FieldKind { F, G, FDual, GDual };

/// Antisymmetric rank-2 field tensor with variance and kind tags.
class FieldTensor {
 public:
  /// Validates |t_ab + t_ba| <= tol * max|t| and stores the exact
  /// antisymmetric part. Throws NotAntisymmetric otherwise.
  FieldTensor(const Mat4& t, Variance variance, FieldKind kind, double tol = kDefaultTolerance);

  static FieldTensor zero(Variance variance, FieldKind kind) { return {Mat4{}, variance, kind}; }

  const Mat4& components() const { return t_; }
  double operator()(std::size_t i, std::size_t j) const { return t_(i, j); }
  Variance variance() const { return variance_; }
  FieldKind kind() const { return kind_; }

  friend bool operator==(const FieldTensor&, const FieldTensor&) = default;

 private:
  Mat4 t_;
  Variance variance_;
  FieldKind kind_;
};

/// F_{ab} from (E_i, B^i): F_{0i} = E_i, F_{12} = -B^3, F_{13} = B^2, F_{23} = -B^1.
FieldTensor build_F_lower(const Covec3& E, const Vec3& B);

/// G^{ab} from (D^i, H_i): G^{0i} = -D^i, G^{12} = -H_3, G^{13} = H_2, G^{23} = -H_1.
FieldTensor build_G_upper(const Vec3& D, const Covec3& H);

struct ElectricField {
  Covec3 E;
  Vec3 B;
};

struct InductionField {
  Vec3 D;
  Covec3 H;
};

/// Reads (E, B) back from a covariant F-kind tensor.
ElectricField extract_EB(const FieldTensor& F);

/// Reads (D, H) back from a contravariant G-kind tensor.
InductionField extract_DH(const FieldTensor& G);

/// T^{ab} = g^{ac} g^{bd} T_{cd}. Requires a covariant input.
FieldTensor raise_indices(const FieldTensor& t, const Metric4& g);

/// T_{ab} = g_{ac} g_{bd} T^{cd}. Requires a contravariant input.
FieldTensor lower_indices(const FieldTensor& t, const Metric4& g);

/// scale * m_{ac} m_{bd} t^{cd} on both slots, tagged with the given variance.
/// Raising, lowering and the geometrized 4D map are all this contraction.
FieldTensor contract_both(const FieldTensor& t, const Mat4& m, Variance result, double scale = 1.0);

/// Rank-4 alternating tensor e_{abcd} = sqrt(-g) eps_{abcd} or
/// e^{abcd} = -eps^{abcd} / sqrt(-g), evaluated on demand.
struct AlternatingTensor {
  Variance variance;
  double density;

  double operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return density * levi_civita4(a, b, c, d);
  }
};

AlternatingTensor alternating_tensor(const Metric4& g, Variance variance);

/// Contracts an antisymmetric tensor with the alternating tensor of g:
/// covariant input -> 1/2 e^{abcd} T_{cd}; contravariant input -> 1/2 e_{abcd} T^{cd}.
/// Kinds map F <-> FDual and G <-> GDual.
FieldTensor hodge_dual(const FieldTensor& t, const Metric4& g);

/// *F^{ab} = 1/2 e^{abcd} F_{cd}. Requires covariant F-kind input.
FieldTensor dual_F(const FieldTensor& F, const Metric4& g);

/// *G_{ab} = 1/2 e_{abcd} G^{cd}. Requires contravariant G-kind input.
FieldTensor dual_G(const FieldTensor& G, const Metric4& g);

// ---------------------------------------------------------------------------

/// Dense rank-4 array indexed (a,b,c,d), a..d in 0..3.
struct Rank4 {
  std::array<double, 256> a{};

  double& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return a[((i * 4 + j) * 4 + k) * 4 + l];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return a[((i * 4 + j) * 4 + k) * 4 + l];
  }
};

}  // namespace geomopt
