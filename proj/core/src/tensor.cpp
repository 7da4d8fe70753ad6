#include "geomopt/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace geomopt {

Metric4::Metric4(const Mat4& g) : g_(g) {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (g(i, j) != g(j, i))
        throw Error(ErrorCode::AsymmetricMetric,
                    "g(" + std::to_string(i) + "," + std::to_string(j) + ") != g(" +
                        std::to_string(j) + "," + std::to_string(i) + ")");
}

double Metric4::sqrt_minus_det() const {
  const double det = determinant();
  if (!(det < 0.0)) throw Error(ErrorCode::NonLorentzian, "det g = " + std::to_string(det));
  return std::sqrt(-det);
}

Mat3 Metric4::spatial_block() const {
  Mat3 s;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s(i, j) = g_(i + 1, j + 1);
  return s;
}

Metric4 metric_inverse(const Metric4& g, double tol) {
  const double scale = g.components().max_abs();
  const double det = g.determinant();
  if (!(std::abs(det) >= tol * std::pow(scale, 4)) || scale == 0.0)
    throw Error(ErrorCode::SingularMetric, "det g = " + std::to_string(det));
  const auto inv = invert(g.components());
  if (!inv) throw Error(ErrorCode::SingularMetric, "zero pivot");
  Mat4 sym;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) sym(i, j) = 0.5 * ((*inv)(i, j) + (*inv)(j, i));
  return Metric4(sym);
}

FieldTensor::FieldTensor(const Mat4& t, Variance variance, FieldKind kind, double tol)
    : variance_(variance), kind_(kind) {
  const double bound = tol * t.max_abs();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i; j < 4; ++j) {
      if (std::abs(t(i, j) + t(j, i)) > bound)
        throw Error(ErrorCode::NotAntisymmetric,
                    "|t(" + std::to_string(i) + "," + std::to_string(j) + ") + t(" +
                        std::to_string(j) + "," + std::to_string(i) + ")| exceeds tolerance");
      const double a = (i == j) ? 0.0 : 0.5 * (t(i, j) - t(j, i));
      t_(i, j) = a;
      t_(j, i) = -a;
    }
  }
  // -0.0 on the diagonal would break bit-level comparisons of zero tensors.
  for (std::size_t i = 0; i < 4; ++i) t_(i, i) = 0.0;
}

namespace {

Mat4 antisymmetric_from_upper(double t01, double t02, double t03, double t12, double t13,
                              double t23) {
  Mat4 m;
  m(0, 1) = t01;
  m(0, 2) = t02;
  m(0, 3) = t03;
  m(1, 2) = t12;
  m(1, 3) = t13;
  m(2, 3) = t23;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) m(j, i) = -m(i, j);
  return m;
}

void require(const FieldTensor& t, Variance variance, FieldKind kind, const char* what) {
  if (t.variance() != variance) throw Error(ErrorCode::VarianceMismatch, what);
  if (t.kind() != kind) throw Error(ErrorCode::KindMismatch, what);
}

FieldKind dual_kind(FieldKind k) {
  switch (k) {
    case FieldKind::F: return FieldKind::FDual;
    case FieldKind::G: return FieldKind::GDual;
    case FieldKind::FDual: return FieldKind::F;
    case FieldKind::GDual: return FieldKind::G;
  }
  return k;
}

}  // namespace

FieldTensor build_F_lower(const Covec3& E, const Vec3& B) {
  return {antisymmetric_from_upper(E[0], E[1], E[2], -B[2], B[1], -B[0]), Variance::Covariant,
          FieldKind::F};
}

FieldTensor build_G_upper(const Vec3& D, const Covec3& H) {
  return {antisymmetric_from_upper(-D[0], -D[1], -D[2], -H[2], H[1], -H[0]),
          Variance::Contravariant, FieldKind::G};
}

ElectricField extract_EB(const FieldTensor& F) {
  require(F, Variance::Covariant, FieldKind::F, "extract_EB needs covariant F");
  return {Covec3{{F(0, 1), F(0, 2), F(0, 3)}}, Vec3{{-F(2, 3), F(1, 3), -F(1, 2)}}};
}

InductionField extract_DH(const FieldTensor& G) {
  require(G, Variance::Contravariant, FieldKind::G, "extract_DH needs contravariant G");
  return {Vec3{{-G(0, 1), -G(0, 2), -G(0, 3)}}, Covec3{{-G(2, 3), G(1, 3), -G(1, 2)}}};
}

FieldTensor contract_both(const FieldTensor& t, const Mat4& m, Variance result, double scale) {
  // Only a < b is computed; the lower triangle is filled by antisymmetry so the
  // result is exactly antisymmetric.
  Mat4 r;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      double s = 0.0;
      for (std::size_t c = 0; c < 4; ++c) {
        const double mac = m(a, c);
        if (mac == 0.0) continue;
        for (std::size_t d = 0; d < 4; ++d) s += mac * m(b, d) * t(c, d);
      }
      r(a, b) = scale * s;
      r(b, a) = -r(a, b);
    }
  }
  return {r, result, t.kind()};
}

FieldTensor raise_indices(const FieldTensor& t, const Metric4& g) {
  if (t.variance() != Variance::Covariant)
    throw Error(ErrorCode::VarianceMismatch, "raise_indices needs a covariant tensor");
  return contract_both(t, metric_inverse(g).components(), Variance::Contravariant);
}

FieldTensor lower_indices(const FieldTensor& t, const Metric4& g) {
  if (t.variance() != Variance::Contravariant)
    throw Error(ErrorCode::VarianceMismatch, "lower_indices needs a contravariant tensor");
  return contract_both(t, g.components(), Variance::Covariant);
}

AlternatingTensor alternating_tensor(const Metric4& g, Variance variance) {
  const double root = g.sqrt_minus_det();
  return variance == Variance::Covariant ? AlternatingTensor{variance, root}
                                         : AlternatingTensor{variance, -1.0 / root};
}

FieldTensor hodge_dual(const FieldTensor& t, const Metric4& g) {
  const Variance out = opposite(t.variance());
  const AlternatingTensor e = alternating_tensor(g, out);
  Mat4 r;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      // 1/2 e^{abcd} T_{cd} = sum over c < d of e^{abcd} T_{cd}.
      double s = 0.0;
      for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t d = c + 1; d < 4; ++d) s += e(a, b, c, d) * t(c, d);
      r(a, b) = s;
      r(b, a) = -s;
    }
  }
  return {r, out, dual_kind(t.kind())};
}

FieldTensor dual_F(const FieldTensor& F, const Metric4& g) {
  require(F, Variance::Covariant, FieldKind::F, "dual_F needs covariant F");
  return hodge_dual(F, g);
}

FieldTensor dual_G(const FieldTensor& G, const Metric4& g) {
  require(G, Variance::Contravariant, FieldKind::G, "dual_G needs contravariant G");
  return hodge_dual(G, g);
}

}  // namespace geomopt
