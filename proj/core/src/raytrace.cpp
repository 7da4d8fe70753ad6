#include "geomopt/raytrace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "geomopt/parallel.hpp"

namespace geomopt {

double hamiltonian(const Metric4& g_inv, const Vector4& k) {
  double h = 0.0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) h += g_inv(a, b) * k[a] * k[b];
  return 0.5 * h;
}

Vector4 project_to_null(const Metric4& g_inv, const Vector4& k) {
  // g^{00} k0^2 + 2 s g^{0i} k0 k_i + s^2 g^{ij} k_i k_j = 0.
  double a = 0.0, b = 0.0;
  const double c = g_inv(0, 0) * k[0] * k[0];
  for (std::size_t i = 1; i < 4; ++i) {
    b += 2.0 * g_inv(0, i) * k[0] * k[i];
    for (std::size_t j = 1; j < 4; ++j) a += g_inv(i, j) * k[i] * k[j];
  }
  const double disc = b * b - 4.0 * a * c;
  if (a == 0.0 || disc < 0.0) throw Error(ErrorCode::NonNullLaunch, "no null rescaling of k");
  const double root = std::sqrt(disc);
  const double s1 = (-b + root) / (2.0 * a);
  const double s2 = (-b - root) / (2.0 * a);
  const double s = std::abs(s1 - 1.0) <= std::abs(s2 - 1.0) ? s1 : s2;
  return {k[0], s * k[1], s * k[2], s * k[3]};
}

Vector4 launch_covector(const MetricField& field, const Point3& x0, const Vec3& direction,
                        double omega) {
  const double len = norm(direction);
  if (!(len > 0.0)) throw Error(ErrorCode::NonNullLaunch, "zero launch direction");
  const Vec3 d = (1.0 / len) * direction;
  const Metric4 g = field(x0);
  // v = (1, s d) with g_{ab} v^a v^b = 0 and s > 0.
  double a = 0.0, b = 0.0;
  const double c = g(0, 0);
  for (std::size_t i = 0; i < 3; ++i) {
    b += 2.0 * g(0, i + 1) * d[i];
    for (std::size_t j = 0; j < 3; ++j) a += g(i + 1, j + 1) * d[i] * d[j];
  }
  const double disc = b * b - 4.0 * a * c;
  if (a == 0.0 || disc < 0.0) throw Error(ErrorCode::NonNullLaunch, "no null direction");
  const double r1 = (-b + std::sqrt(disc)) / (2.0 * a);
  const double r2 = (-b - std::sqrt(disc)) / (2.0 * a);
  const double s = std::max(r1, r2);
  if (!(s > 0.0)) throw Error(ErrorCode::NonNullLaunch, "no future-directed null direction");
  const Vector4 v{1.0, s * d[0], s * d[1], s * d[2]};
  Vector4 k{};
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = 0; q < 4; ++q) k[p] += g(p, q) * v[q];
  if (!(k[0] != 0.0)) throw Error(ErrorCode::NonNullLaunch, "zero frequency");
  const double scale = omega / k[0];
  for (double& x : k) x *= scale;
  return k;
}

namespace {

double domain_scale(const Box3& box) {
  double scale = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double extent = box.hi[i] - box.lo[i];
    if (std::isfinite(extent)) scale = std::max(scale, extent);
  }
  return scale > 0.0 ? scale : 1.0;
}

Point3 spatial(const Vector4& x) { return {x[1], x[2], x[3]}; }

struct Phase {
  Vector4 x;
  Vector4 k;
};

class Integrator {
 public:
  Integrator(const MetricField& field, double delta) : field_(field), delta_(delta) {}

  Metric4 inverse_at(const Point3& p, int side) const {
    return metric_inverse(field_.piecewise() ? field_.branch(p, side) : field_(p));
  }

  Phase rate(const Phase& s, int side) const {
    const Point3 p = spatial(s.x);
    const Metric4 inv = inverse_at(p, side);
    Phase d{};
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) d.x[a] += inv(a, b) * s.k[b];
    for (std::size_t i = 0; i < 3; ++i) {
      Point3 plus = p, minus = p;
      plus[i] += delta_;
      minus[i] -= delta_;
      const double hp = hamiltonian(inverse_at(plus, side), s.k);
      const double hm = hamiltonian(inverse_at(minus, side), s.k);
      d.k[i + 1] = -(hp - hm) / (2.0 * delta_);
    }
    return d;
  }

  Phase rk4(const Phase& s, double h, int side) const {
    auto axpy = [](const Phase& base, double f, const Phase& d) {
      Phase r = base;
      for (std::size_t a = 0; a < 4; ++a) {
        r.x[a] += f * d.x[a];
        r.k[a] += f * d.k[a];
      }
      return r;
    };
    const Phase k1 = rate(s, side);
    const Phase k2 = rate(axpy(s, 0.5 * h, k1), side);
    const Phase k3 = rate(axpy(s, 0.5 * h, k2), side);
    const Phase k4 = rate(axpy(s, h, k3), side);
    Phase r = s;
    for (std::size_t a = 0; a < 4; ++a) {
      r.x[a] += h / 6.0 * (k1.x[a] + 2.0 * k2.x[a] + 2.0 * k3.x[a] + k4.x[a]);
      r.k[a] += h / 6.0 * (k1.k[a] + 2.0 * k2.k[a] + 2.0 * k3.k[a] + k4.k[a]);
    }
    return r;
  }

  double level(const Phase& s) const { return field_.interface(spatial(s.x)); }

  // True when the level-set value is on the given side (zero counts as both).
  static bool on_side(double level, int side) { return level == 0.0 || (level > 0.0) == (side > 0); }

  // Step length in (0, h] at which the ray first reaches the other side,
  // found on the bracket [lo, hi] by the Illinois variant of regula falsi.
  // Returns the bracket end that lies on the far side.
  double crossing(const Phase& s, double h, int side) const {
    double lo = 0.0, hi = h;
    double flo = level(s), fhi = level(rk4(s, h, side));
    int retained = 0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * h; ++iter) {
      const double mid = (flo == fhi) ? 0.5 * (lo + hi) : hi - fhi * (hi - lo) / (fhi - flo);
      const double probe = std::clamp(mid, lo, hi);
      const double fm = level(rk4(s, probe, side));
      if (fm == 0.0) return probe;
      if (on_side(fm, side)) {
        lo = probe;
        flo = fm;
        if (retained == 1) fhi *= 0.5;
        retained = 1;
      } else {
        hi = probe;
        fhi = fm;
        if (retained == -1) flo *= 0.5;
        retained = -1;
      }
    }
    return hi;
  }

 private:
  const MetricField& field_;
  double delta_;
};

RayState make_state(const Integrator& integ, const Phase& p, double lambda, int side) {
  return {p.x, p.k, lambda, hamiltonian(integ.inverse_at(spatial(p.x), side), p.k)};
}

int initial_side(const MetricField& field, const Integrator& integ, const Phase& s) {
  if (!field.piecewise()) return 1;
  const double f = integ.level(s);
  if (f != 0.0) return f > 0.0 ? 1 : -1;
  // On the interface: follow the direction of travel.
  const Phase d = integ.rate(s, 1);
  Phase ahead = s;
  for (std::size_t a = 0; a < 4; ++a) ahead.x[a] += 1e-9 * d.x[a];
  return integ.level(ahead) >= 0.0 ? 1 : -1;
}

}  // namespace

Trajectory trace_ray(const MetricField& field, const Vector4& x0, const Vector4& k0,
                     const TraceOptions& options) {
  if (!(options.step > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  const Integrator integ(field, options.fd_delta * domain_scale(field.domain));
  Phase s{x0, k0};
  int side = initial_side(field, integ, s);
  if (options.project_to_null) s.k = project_to_null(integ.inverse_at(spatial(x0), side), s.k);

  Trajectory out;
  out.states.reserve(options.steps + 1);
  out.states.push_back(make_state(integ, s, 0.0, side));
  const double h0 = out.states.front().hamiltonian;
  if (std::abs(h0) > options.null_tolerance)
    throw Error(ErrorCode::NonNullLaunch, "H(x0, k0) = " + std::to_string(h0));
  out.max_null_drift = std::abs(h0);

  double lambda = 0.0;
  for (std::size_t n = 0; n < options.steps; ++n) {
    double remaining = options.step;
    for (int split = 0; split < 8 && remaining > 0.0; ++split) {
      const Phase trial = integ.rk4(s, remaining, side);
      if (!field.piecewise() || Integrator::on_side(integ.level(trial), side) || split == 7) {
        s = trial;
        lambda += remaining;
        remaining = 0.0;
        break;
      }
      const double h = integ.crossing(s, remaining, side);
      s = integ.rk4(s, h, side);
      lambda += h;
      remaining -= h;
      side = -side;
      out.states.push_back(make_state(integ, s, lambda, side));
    }
    // Final state of the step, unless the split landed exactly on it.
    if (out.states.back().lambda != lambda) out.states.push_back(make_state(integ, s, lambda, side));
    out.max_null_drift = std::max(out.max_null_drift, std::abs(out.states.back().hamiltonian));
    if (!field.domain.contains(spatial(s.x))) {
      out.status = TraceStatus::DomainExit;
      break;
    }
  }
  for (const RayState& st : out.states)
    out.max_null_drift = std::max(out.max_null_drift, std::abs(st.hamiltonian));
  return out;
}

std::vector<Trajectory> trace_fan(const MetricField& field, const std::vector<Launch>& launches,
                                  const TraceOptions& options) {
  std::vector<Trajectory> out(launches.size());
  parallel_for(launches.size(),
               [&](std::size_t i) { out[i] = trace_ray(field, launches[i].x, launches[i].k, options); });
  return out;
}

// ---------------------------------------------------------------------------

std::vector<MediumCatalogEntry> catalog(double homogeneous_n) {
  const Box3 lens{{-3.0, -3.0, -3.0}, {3.0, 3.0, 3.0}};
  std::vector<MediumCatalogEntry> out;
  out.push_back({"maxwell_fisheye",
                 {[](double r) { return 2.0 / (1.0 + r * r); }, [](double r) { return 2.0 / (1.0 + r * r); }},
                 lens});
  out.push_back({"luneburg",
                 {[](double r) { return std::sqrt(2.0 - r * r); }, [](double) { return 1.0; }, 1.0},
                 lens});
  out.push_back({"homogeneous",
                 {[homogeneous_n](double) { return homogeneous_n; },
                  [homogeneous_n](double) { return homogeneous_n; }},
                 Box3{{-10.0, -10.0, -10.0}, {10.0, 10.0, 10.0}}});
  return out;
}

MediumCatalogEntry find_medium(const std::string& name, double homogeneous_n) {
  for (auto& entry : catalog(homogeneous_n))
    if (entry.name == name) return entry;
  throw Error(ErrorCode::UnknownMedium, "unknown medium '" + name + "'");
}

}  // namespace geomopt
