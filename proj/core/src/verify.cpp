#include "geomopt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "geomopt/parallel.hpp"

namespace geomopt {

double Rank3::max_abs() const {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double Connection::lower_asymmetry() const {
  double worst = 0.0;
  for (std::size_t d = 0; d < 4; ++d)
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b)
        worst = std::max(worst, std::abs(gamma(d, a, b) - gamma(d, b, a)));
  return worst;
}

Connection christoffel_symbols(const MetricField& field, const Point3& x, double delta) {
  const Mat4 inv = metric_inverse(field(x)).components();
  // dg[c] = d_c g_{ab}; c = 0 is time and vanishes for static fields.
  std::array<Mat4, 4> dg{};
  for (std::size_t i = 0; i < 3; ++i) {
    Point3 plus = x, minus = x;
    plus[i] += delta;
    minus[i] -= delta;
    dg[i + 1] = (1.0 / (2.0 * delta)) * (field(plus).components() - field(minus).components());
  }
  Connection conn;
  for (std::size_t d = 0; d < 4; ++d)
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a; b < 4; ++b) {
        double s = 0.0;
        for (std::size_t e = 0; e < 4; ++e)
          s += inv(d, e) * (dg[a](e, b) + dg[b](e, a) - dg[e](a, b));
        conn.gamma(d, a, b) = 0.5 * s;
        conn.gamma(d, b, a) = 0.5 * s;
      }
  return conn;
}

Rank3 cyclic_partial_sum(const Rank3& dF) {
  Rank3 s;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c) s(a, b, c) = dF(a, b, c) + dF(b, c, a) + dF(c, a, b);
  return s;
}

Rank3 cyclic_covariant_sum(const Rank3& dF, const Mat4& F, const Connection& connection,
                           SymmetryCheck check, double tol) {
  if (check == SymmetryCheck::Enforce &&
      connection.lower_asymmetry() > tol * connection.gamma.max_abs())
    throw Error(ErrorCode::AsymmetricConnection,
                "lower asymmetry " + std::to_string(connection.lower_asymmetry()));
  const Rank3& G = connection.gamma;
  Rank3 s;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c) {
        double v = dF(a, b, c) + dF(b, c, a) + dF(c, a, b);
        for (std::size_t d = 0; d < 4; ++d) {
          v -= G(d, a, b) * F(d, c) + G(d, a, c) * F(b, d);
          v -= G(d, b, c) * F(d, a) + G(d, b, a) * F(c, d);
          v -= G(d, c, a) * F(d, b) + G(d, c, b) * F(a, d);
        }
        s(a, b, c) = v;
      }
  return s;
}

Rank3 cyclic_covariant_sum(const Rank3& dF, const FieldTensor& F, const Connection& connection) {
  if (F.variance() != Variance::Covariant)
    throw Error(ErrorCode::VarianceMismatch, "cyclic sum needs covariant F");
  return cyclic_covariant_sum(dF, F.components(), connection);
}

// ---------------------------------------------------------------------------

std::array<std::size_t, 4> GridSpec4::unflatten(std::size_t flat) const {
  std::array<std::size_t, 4> idx{};
  for (std::size_t axis = 4; axis-- > 0;) {
    idx[axis] = flat % count[axis];
    flat /= count[axis];
  }
  return idx;
}

Vector4 GridSpec4::position(const std::array<std::size_t, 4>& idx) const {
  Vector4 x;
  for (std::size_t a = 0; a < 4; ++a) x[a] = origin[a] + static_cast<double>(idx[a]) * spacing[a];
  return x;
}

FieldGrid::FieldGrid(GridSpec4 spec, std::vector<Mat4> samples)
    : spec_(spec), samples_(std::move(samples)) {
  if (samples_.size() != spec_.total())
    throw Error(ErrorCode::InvalidArgument, "sample count does not match grid");
}

FieldGrid FieldGrid::sample(const GridSpec4& spec,
                            const std::function<Mat4(const Vector4&)>& field) {
  std::vector<Mat4> samples(spec.total());
  parallel_for(samples.size(),
               [&](std::size_t i) { samples[i] = field(spec.position(spec.unflatten(i))); });
  return {spec, std::move(samples)};
}

namespace {

// Enumerates nodes whose index lies in [1, count-2] along every axis listed in
// `active`; other axes run over their full range.
std::vector<std::size_t> interior_nodes(const GridSpec4& spec, const std::array<bool, 4>& active) {
  std::vector<std::size_t> nodes;
  for (std::size_t f = 0; f < spec.total(); ++f) {
    const auto idx = spec.unflatten(f);
    bool inside = true;
    for (std::size_t a = 0; a < 4 && inside; ++a)
      if (active[a] && (idx[a] == 0 || idx[a] + 1 >= spec.count[a])) inside = false;
    if (inside) nodes.push_back(f);
  }
  return nodes;
}

}  // namespace

double bianchi_residual_grid(const PotentialFn& A, const GridSpec4& grid) {
  for (std::size_t a = 0; a < 4; ++a)
    if (grid.count[a] < 3 || !(grid.spacing[a] > 0.0))
      throw Error(ErrorCode::GridTooSmall, "axis " + std::to_string(a) + " needs >= 3 points");

  std::vector<Mat4> field(grid.total());
  parallel_for(field.size(), [&](std::size_t f) {
    const Vector4 x = grid.position(grid.unflatten(f));
    // dA[b][c] = d_b A_c, fourth-order central stencil.
    std::array<Vector4, 4> dA{};
    for (std::size_t b = 0; b < 4; ++b) {
      const double h = grid.spacing[b];
      auto shifted = [&](double s) {
        Vector4 y = x;
        y[b] += s * h;
        return A(y);
      };
      const Vector4 p1 = shifted(1), m1 = shifted(-1), p2 = shifted(2), m2 = shifted(-2);
      for (std::size_t c = 0; c < 4; ++c)
        dA[b][c] = (-p2[c] + 8.0 * p1[c] - 8.0 * m1[c] + m2[c]) / (12.0 * h);
    }
    Mat4 F;
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c) F(b, c) = dA[b][c] - dA[c][b];
    field[f] = F;
  });

  const auto nodes = interior_nodes(grid, {true, true, true, true});
  std::vector<double> residual(nodes.size(), 0.0);
  parallel_for(nodes.size(), [&](std::size_t n) {
    const auto idx = grid.unflatten(nodes[n]);
    // d_a F_{bc} at this node by central differences.
    auto derivative = [&](std::size_t a, std::size_t b, std::size_t c) {
      auto plus = idx, minus = idx;
      ++plus[a];
      --minus[a];
      return (field[grid.flat(plus)](b, c) - field[grid.flat(minus)](b, c)) /
             (2.0 * grid.spacing[a]);
    };
    double worst = 0.0;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b)
        for (std::size_t c = b + 1; c < 4; ++c) {
          const double s = derivative(a, b, c) + derivative(b, c, a) + derivative(c, a, b);
          worst = std::max(worst, std::abs(s));
        }
    residual[n] = worst;
  });
  double worst = 0.0;
  for (double r : residual) worst = std::max(worst, r);
  return worst;
}

GridResidual divergence_residual(const FieldGrid& G, const MetricField& gamma,
                                 const CurrentFn& current, double c) {
  const GridSpec4& spec = G.spec();
  std::array<bool, 4> active{};
  for (std::size_t a = 0; a < 4; ++a) {
    if (spec.count[a] == 2 || (spec.count[a] > 2 && !(spec.spacing[a] > 0.0)))
      throw Error(ErrorCode::GridTooSmall, "axis " + std::to_string(a) + " needs >= 3 points");
    active[a] = spec.count[a] >= 3;
  }

  std::vector<double> root(spec.total());
  parallel_for(root.size(), [&](std::size_t f) {
    const Vector4 x = spec.position(spec.unflatten(f));
    root[f] = gamma(Point3{x[1], x[2], x[3]}).sqrt_minus_det();
  });

  const double source = 4.0 * std::numbers::pi / c;
  const auto nodes = interior_nodes(spec, active);
  GridResidual out;
  out.per_point.assign(nodes.size(), 0.0);
  parallel_for(nodes.size(), [&](std::size_t n) {
    const auto idx = spec.unflatten(nodes[n]);
    const Vector4 x = spec.position(idx);
    const Vector4 j = current ? current(x) : Vector4{};
    double worst = 0.0;
    for (std::size_t b = 0; b < 4; ++b) {
      double div = 0.0;
      for (std::size_t a = 0; a < 4; ++a) {
        if (!active[a]) continue;
        auto plus = idx, minus = idx;
        ++plus[a];
        --minus[a];
        const std::size_t fp = spec.flat(plus), fm = spec.flat(minus);
        div += (root[fp] * G.at(plus)(a, b) - root[fm] * G.at(minus)(a, b)) /
               (2.0 * spec.spacing[a]);
      }
      const double r = div / root[nodes[n]] - source * j[b];
      worst = std::max(worst, std::abs(r));
    }
    out.per_point[n] = worst;
  });
  for (double r : out.per_point) out.max_abs = std::max(out.max_abs, r);
  return out;
}

// ---------------------------------------------------------------------------

Vector4 four_velocity(const MediumVelocity& v) {
  const double speed = norm(v.u);
  if (!(speed < v.c)) throw Error(ErrorCode::SuperluminalVelocity, "|u| >= c");
  const double lorentz = 1.0 / std::sqrt(1.0 - (speed / v.c) * (speed / v.c));
  return {lorentz * v.c, lorentz * v.u[0], lorentz * v.u[1], lorentz * v.u[2]};
}

ProjectionResidual minkowski_projection_residual(const FieldTensor& F_lower,
                                                 const FieldTensor& G_upper,
                                                 const IsotropicMedium& medium,
                                                 const Vector4& u_upper, const Metric4& g,
                                                 double c) {
  if (F_lower.variance() != Variance::Covariant || G_upper.variance() != Variance::Contravariant)
    throw Error(ErrorCode::VarianceMismatch, "need covariant F and contravariant G");
  Vector4 u_lower{};
  double norm2 = 0.0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      u_lower[a] += g(a, b) * u_upper[b];
      norm2 += g(a, b) * u_upper[a] * u_upper[b];
    }
  if (std::abs(norm2 - c * c) > 1e-9 * c * c)
    throw Error(ErrorCode::UnnormalizedVelocity, "g(u,u) = " + std::to_string(norm2));

  const FieldTensor F_upper = raise_indices(F_lower, g);
  const FieldTensor F_dual = dual_F(F_lower, g);
  const FieldTensor G_dual = raise_indices(dual_G(G_upper, g), g);

  ProjectionResidual res;
  for (std::size_t a = 0; a < 4; ++a) {
    double electric = 0.0, magnetic = 0.0;
    for (std::size_t b = 0; b < 4; ++b) {
      electric += (G_upper(a, b) - medium.eps * F_upper(a, b)) * u_lower[b];
      magnetic += (F_dual(a, b) - medium.mu * G_dual(a, b)) * u_lower[b];
    }
    res.electric = std::max(res.electric, std::abs(electric));
    res.magnetic = std::max(res.magnetic, std::abs(magnetic));
  }
  return res;
}

}  // namespace geomopt
