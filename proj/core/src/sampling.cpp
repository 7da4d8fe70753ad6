#include "geomopt/sampling.hpp"

#include <cmath>

namespace geomopt {

Metric4 Sampler::lorentzian_metric(double spread) {
  const Mat4 eta = Mat4::diagonal({1.0, -1.0, -1.0, -1.0});
  for (;;) {
    Mat4 A = Mat4::identity();
    for (double& v : A.a) v += spread * uniform(-1.0, 1.0);
    const Mat4 p = A.transposed() * eta * A;
    Mat4 g;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) g(i, j) = g(j, i) = p(i, j);
    const double det = determinant(g);
    if (g(0, 0) > 0.1 && det < -1e-3) return Metric4(g);
  }
}

Mat4 Sampler::antisymmetric() {
  Mat4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      m(i, j) = uniform(-1.0, 1.0);
      m(j, i) = -m(i, j);
    }
  return m;
}

Rank3 Sampler::field_derivative() {
  Rank3 d;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = b + 1; c < 4; ++c) {
        d(a, b, c) = uniform(-1.0, 1.0);
        d(a, c, b) = -d(a, b, c);
      }
  return d;
}

Connection Sampler::symmetric_connection() {
  Connection conn;
  for (std::size_t d = 0; d < 4; ++d)
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a; b < 4; ++b) {
        conn.gamma(d, a, b) = uniform(-1.0, 1.0);
        conn.gamma(d, b, a) = conn.gamma(d, a, b);
      }
  return conn;
}

Mat3 Sampler::spd3() {
  Mat3 b;
  for (double& v : b.a) v = uniform(-1.0, 1.0);
  Mat3 m = b * b.transposed();
  for (std::size_t i = 0; i < 3; ++i) m(i, i) += 0.5;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) m(j, i) = m(i, j);
  return m;
}

}  // namespace geomopt
